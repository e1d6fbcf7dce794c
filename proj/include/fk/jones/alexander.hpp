#pragma once

#include "fk/braid/braid.hpp"
#include "fk/qalg/laurent.hpp"
#include "fk/qalg/polydiv.hpp"

#include <stdexcept>
#include <vector>

namespace fk {

/// Symmetric Alexander polynomial in x (unit exponents), normalized to 1 at x = 1.
struct AlexanderPoly {
    IntLaurent poly;

    int d() const { return poly.is_zero() ? 0 : -poly.min_exp(); }

    /// coefficients of Delta as a polynomial in y = x + x^{-1} - 2, index = power of y
    std::vector<Int> in_y() const {
        IntLaurent rest = poly;
        const int top = d();
        std::vector<Int> out(top + 1);
        // y^k = (x^{1/2} - x^{-1/2})^{2k}
        for (int k = top; k >= 0; --k) {
            const Int c = rest.coeff(k);
            out[k] = c;
            if (c == 0) continue;
            IntLaurent yk;
            for (int t = 0; t <= 2 * k; ++t) {
                Int b = binomial(2 * k, t);
                yk.add_term(k - t, (t % 2 == 0) ? b : Int(-b));
            }
            rest.add_scaled_shifted(yk, -c, 0);
        }
        if (!rest.is_zero()) throw std::logic_error("Alexander polynomial is not symmetric");
        return out;
    }

    friend bool operator==(const AlexanderPoly& a, const AlexanderPoly& b) { return a.poly == b.poly; }
};

namespace detail {

using PolyMatrix = std::vector<std::vector<IntLaurent>>;

inline PolyMatrix identity_matrix(int m) {
    PolyMatrix r(m, std::vector<IntLaurent>(m));
    for (int i = 0; i < m; ++i) r[i][i] = IntLaurent::constant(1);
    return r;
}

inline PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
    const std::size_t m = a.size();
    PolyMatrix r(m, std::vector<IntLaurent>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[k][j].is_zero()) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

/// reduced Burau matrix of sigma_i^{sign} on n strands, size n - 1
inline PolyMatrix burau_letter(int n, const Letter& l) {
    const int m = n - 1;
    PolyMatrix r = identity_matrix(m);
    const int i = l.index - 1;  // 0-based row of the generator
    const IntLaurent t = IntLaurent::monomial(1), ti = IntLaurent::monomial(-1);
    const IntLaurent one = IntLaurent::constant(1);
    if (l.sign > 0) {
        r[i][i] = -t;
        if (i > 0) r[i][i - 1] = t;
        if (i + 1 < m) r[i][i + 1] = one;
    } else {
        r[i][i] = -ti;
        if (i > 0) r[i][i - 1] = one;
        if (i + 1 < m) r[i][i + 1] = ti;
    }
    return r;
}

}  // namespace detail

/// Alexander polynomial of the closure via the reduced Burau representation
inline AlexanderPoly alexander(const BraidWord& b) {
    if (closure_components(b) != 1) throw std::invalid_argument("closure is not a knot");
    const int n = b.strands;
    AlexanderPoly res;
    if (n == 1) {
        res.poly = IntLaurent::constant(1);
        return res;
    }
    detail::PolyMatrix M = detail::identity_matrix(n - 1);
    for (const auto& l : b.letters) M = detail::matmul(M, detail::burau_letter(n, l));
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) M[i][j] = -M[i][j];
        M[i][i] += IntLaurent::constant(1);
    }
    IntLaurent det = bareiss_determinant(M);
    IntLaurent cyc;
    for (int k = 0; k < n; ++k) cyc.add_term(k, Int(1));
    IntLaurent delta = exact_divide(det, cyc);
    // symmetrize and normalize to 1 at x = 1
    const int shift = -(delta.min_exp() + delta.max_exp());
    if (shift % 2 != 0) throw std::logic_error("Alexander polynomial has odd span");
    delta.shift_in_place(shift / 2);
    Int at_one = 0;
    delta.for_each([&](int, const Int& c) { at_one += c; });
    if (at_one == -1)
        delta = -delta;
    else if (at_one != 1)
        throw std::logic_error("Alexander polynomial does not evaluate to +-1 at 1");
    res.poly = delta;
    return res;
}

}  // namespace fk
