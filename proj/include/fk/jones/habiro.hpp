#pragma once

#include "fk/jones/alexander.hpp"
#include "fk/jones/colored_jones.hpp"
#include "fk/qalg/polydiv.hpp"
#include "fk/qalg/qcomb.hpp"

#include <stdexcept>
#include <vector>

namespace fk {

struct HabiroData {
    std::vector<HalfLaurent> coeffs;     // a_0..a_N
    std::vector<Rational> derivs_at_one;  // da_n/dq at q = 1
};

/**
 * a_n = sum_i (-1)^{n-i} [2i+2] [2n+2 choose n-i] J_i / ([2n+2] {2n+1}{2n}...{2}),
 * which is the cyclotomic inversion with [2n+1 choose n+1+i]/[n+i+2] rewritten
 * over a common denominator. Division must be exact.
 */
inline HabiroData habiro_coefficients(const JonesTable& J, int N) {
    if (static_cast<int>(J.values.size()) <= N) throw std::invalid_argument("Jones table too short for the requested Habiro order");
    HabiroData h;
    for (int n = 0; n <= N; ++n) {
        HalfLaurent num;
        for (int i = 0; i <= n; ++i) {
            HalfLaurent t = quantum_int(2 * i + 2) * qbinom_sym(2 * n + 2, n - i) * J.values[i];
            if ((n - i) % 2 != 0) t = -t;
            num += t;
        }
        HalfLaurent den = quantum_int(2 * n + 2) * quantum_brace_falling(2 * n + 1, 2 * n);
        HalfLaurent a;
        try {
            a = exact_divide(num, den);
        } catch (const DivisionError&) {
            throw DivisionError("Habiro coefficient a_" + std::to_string(n) + " is not a Laurent polynomial");
        }
        h.coeffs.push_back(a);
        h.derivs_at_one.push_back(expand_at_one(a, 1)[1]);
    }
    return h;
}

/// [n+1] sum_k a_k prod_{i=1}^k (y + 2 - q^i - q^{-i}) at y + 2 = q^{n+1} + q^{-(n+1)}
inline HalfLaurent habiro_reconstruct(const HabiroData& h, int n) {
    HalfLaurent sum;
    HalfLaurent prod = HalfLaurent::constant(1);
    const HalfLaurent ypl2 = qpow(n + 1) + qpow(-(n + 1));
    for (std::size_t k = 0; k < h.coeffs.size(); ++k) {
        if (k > 0) prod = prod * (ypl2 - qpow(static_cast<int>(k)) - qpow(-static_cast<int>(k)));
        if (prod.is_zero()) break;
        sum += h.coeffs[k] * prod;
    }
    return quantum_int(n + 1) * sum;
}

/// coefficients of a polynomial in y raised to a power
inline std::vector<Int> poly_pow(const std::vector<Int>& p, int e) {
    std::vector<Int> r = {Int(1)};
    for (int t = 0; t < e; ++t) {
        std::vector<Int> s(r.size() + p.size() - 1);
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = 0; j < p.size(); ++j) s[i + j] += r[i] * p[j];
        r = std::move(s);
    }
    return r;
}

struct HopfResult {
    int genus = 0;
    std::vector<Rational> terms;  // [y^i] Delta^3 * a'_{2g-i}(1), i = 0..2g-1
    Rational lambda = 0;
    Rational ell = 0;
};

/// lambda = g - sum_{i<2g} [y^i]Delta^3(y) * a'_{2g-i}(1)
inline HopfResult hopf(const AlexanderPoly& delta, const HabiroData& h) {
    HopfResult r;
    r.genus = delta.d();
    const int g = r.genus;
    if (g > 0 && abs(delta.poly.coeff(g)) != 1) throw std::domain_error("Alexander polynomial is not monic");
    if (static_cast<int>(h.derivs_at_one.size()) <= 2 * g) throw std::invalid_argument("Habiro data too short for the genus");
    std::vector<Int> d3 = poly_pow(delta.in_y(), 3);
    Rational sum = 0;
    for (int i = 0; i < 2 * g; ++i) {
        Rational t = Rational(i < static_cast<int>(d3.size()) ? d3[i] : Int(0)) * h.derivs_at_one[2 * g - i];
        r.terms.push_back(t);
        sum += t;
    }
    r.lambda = Rational(g) - sum;
    r.ell = sum;
    return r;
}

}  // namespace fk
