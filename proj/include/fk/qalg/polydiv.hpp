#pragma once

#include "fk/qalg/laurent.hpp"

#include <stdexcept>

namespace fk {

struct DivisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact quotient a / b of Laurent polynomials over Z; throws on a nonzero remainder.
inline IntLaurent exact_divide(const IntLaurent& a, const IntLaurent& b) {
    if (b.is_zero()) throw DivisionError("division by zero polynomial");
    if (a.is_zero()) return IntLaurent();
    IntLaurent rem = a;
    IntLaurent quo;
    const int bhi = b.max_exp();
    const int blo = b.min_exp();
    const Int lead = b.coeff(bhi);
    while (!rem.is_zero()) {
        const int rhi = rem.max_exp();
        if (rhi - bhi < rem.min_exp() - blo) throw DivisionError("inexact division (degree)");
        Int c = rem.coeff(rhi);
        if (c % lead != 0) throw DivisionError("inexact division (coefficient)");
        Int t = c / lead;
        quo.add_term(rhi - bhi, t);
        rem.add_scaled_shifted(b, -t, rhi - bhi);
    }
    return quo;
}

/// Fraction-free determinant over Z[t^{+-1}] (Bareiss).
inline IntLaurent bareiss_determinant(std::vector<std::vector<IntLaurent>> m) {
    const std::size_t n = m.size();
    if (n == 0) return IntLaurent::constant(1);
    IntLaurent prev = IntLaurent::constant(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return IntLaurent();
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                IntLaurent v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = exact_divide(v, prev);
            }
        }
        prev = m[k][k];
    }
    IntLaurent d = m[n - 1][n - 1];
    if (sign < 0) d = -d;
    return d;
}

}  // namespace fk
