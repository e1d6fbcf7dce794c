#pragma once

#include "fk/qalg/qcomb.hpp"
#include "fk/qalg/xseries.hpp"

#include <vector>

namespace fk {

/**
 * Extended R-matrix entry in factored form:
 *   sign * q^{q2/2} x^{x2/2} * binom * prod (1 - q^{m/2} x) / prod (1 - q^{d/2} x)
 * with m in mul_q2 and d in div_q2 (doubled exponents).
 */
struct RFactors {
    bool zero = true;
    int sign = 1;
    long q2 = 0;
    long x2 = 0;
    HalfLaurent binom;
    std::vector<long> mul_q2;
    std::vector<long> div_q2;
};

/// entry (R^{crossing_sign})_{i,j}^{i',j'}
inline RFactors r_factors(int crossing_sign, long i, long j, long ip, long jp) {
    RFactors f;
    if (i + j != ip + jp) return f;
    if (crossing_sign > 0) {
        const bool rows12 = (i >= jp && jp >= 0) || (0 > i && i >= jp);
        const bool row3 = jp >= 0 && 0 > i;
        if (!rows12 && !row3) return f;
        f.zero = false;
        f.q2 = 2 * j * jp + (j + jp + 1);
        f.x2 = j + jp + 1;
        if (rows12) {
            f.binom = qbinom_balanced(static_cast<int>(i), static_cast<int>(i - jp));
            for (long k = 0; k < i - jp; ++k) f.mul_q2.push_back(2 * (j + 1 + k));
        } else {
            f.binom = qbinom_balanced(static_cast<int>(i), static_cast<int>(jp));
            for (long k = 0; k < jp - i; ++k) f.div_q2.push_back(2 * (j - k));
        }
    } else {
        const bool rows12 = (j >= ip && ip >= 0) || (0 > j && j >= ip);
        const bool row3 = ip >= 0 && 0 > j;
        if (!rows12 && !row3) return f;
        f.zero = false;
        f.q2 = -2 * i * ip - (i + ip + 1);
        f.x2 = -(i + ip + 1);
        if (rows12) {
            f.binom = qbinom_balanced_inv(static_cast<int>(j), static_cast<int>(j - ip));
            // (q^{-i-1} x^{-1}; q^{-1})_{j-i'}: each factor is -q^{-(i+1+k)} x^{-1} (1 - q^{i+1+k} x)
            for (long k = 0; k < j - ip; ++k) {
                f.sign = -f.sign;
                f.q2 -= 2 * (i + 1 + k);
                f.x2 -= 2;
                f.mul_q2.push_back(2 * (i + 1 + k));
            }
        } else {
            f.binom = qbinom_balanced_inv(static_cast<int>(j), static_cast<int>(ip));
            // 1/(q^{-i} x^{-1}; q)_{i'-j}: each factor is -q^{i-k} x / (1 - q^{i-k} x)
            for (long k = 0; k < ip - j; ++k) {
                f.sign = -f.sign;
                f.q2 += 2 * (i - k);
                f.x2 += 2;
                f.div_q2.push_back(2 * (i - k));
            }
        }
    }
    if (f.binom.is_zero()) f.zero = true;
    return f;
}

/// the entry expanded at x = 0, truncated at doubled x-order x_order
inline FSeries r_matrix(int crossing_sign, long i, long j, long ip, long jp, int x_order) {
    RFactors f = r_factors(crossing_sign, i, j, ip, jp);
    FSeries s(x_order);
    if (f.zero) return s;
    HalfLaurent c = f.binom.shifted(static_cast<int>(f.q2));
    if (f.sign < 0) c = -c;
    s.add(static_cast<int>(f.x2), c);
    for (long m : f.mul_q2) s = poch_multiply(s, {static_cast<int>(m), 2}, 1, 1);
    for (long d : f.div_q2) s = poch_divide(s, {static_cast<int>(d), 2}, 1, 1);
    return s;
}

}  // namespace fk
