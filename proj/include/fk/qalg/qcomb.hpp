#pragma once

#include "fk/qalg/cyclotomic.hpp"
#include "fk/qalg/laurent.hpp"
#include "fk/qalg/xseries.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fk {

/// [n] = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})
inline HalfLaurent quantum_int(int n) {
    HalfLaurent r;
    if (n == 0) return r;
    const int m = n > 0 ? n : -n;
    for (int k = 0; k < m; ++k) r.add_term(m - 1 - 2 * k, Int(1));
    return n > 0 ? r : -r;
}

/// {n} = q^{n/2} - q^{-n/2}
inline HalfLaurent quantum_brace(int n) { return qpow2(n) - qpow2(-n); }

/// {m}_k = {m}{m-1}...{m-k+1}
inline HalfLaurent quantum_brace_falling(int m, int k) {
    HalfLaurent r = HalfLaurent::constant(1);
    for (int i = 0; i < k; ++i) r *= quantum_brace(m - i);
    return r;
}

inline HalfLaurent quantum_factorial(int n) {
    HalfLaurent r = HalfLaurent::constant(1);
    for (int i = 1; i <= n; ++i) r *= quantum_int(i);
    return r;
}

/// Gaussian binomial in integer powers of q (doubled exponents), 0 <= k <= n
inline const HalfLaurent& gaussian_binomial(int n, int k) {
    thread_local std::map<std::pair<int, int>, HalfLaurent> cache;
    auto key = std::make_pair(n, k);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    HalfLaurent r;
    if (k < 0 || k > n)
        r = HalfLaurent();
    else if (k == 0 || k == n)
        r = HalfLaurent::constant(1);
    else {
        r = gaussian_binomial(n - 1, k - 1);
        r.add_scaled_shifted(gaussian_binomial(n - 1, k), Int(1), 2 * k);
    }
    return cache.emplace(key, std::move(r)).first->second;
}

/// balanced q-binomial [n k] = [n][n-1]...[n-k+1] / [k]!, any integer n, k >= 0
inline HalfLaurent qbinom_sym(int n, int k) {
    if (k < 0) return HalfLaurent();
    if (k == 0) return HalfLaurent::constant(1);
    if (n >= k) return gaussian_binomial(n, k).shifted(-k * (n - k));
    if (n >= 0) return HalfLaurent();
    const int m = -n;
    HalfLaurent r = gaussian_binomial(m + k - 1, k).shifted(-k * (m - 1));
    return (k % 2 == 0) ? r : -r;
}

/// [n k]_q = q^{(n-k)k/2} [n k] = (q^n; q^{-1})_k / (q; q)_k
inline HalfLaurent qbinom_balanced(int n, int k) {
    HalfLaurent r = qbinom_sym(n, k);
    r.shift_in_place((n - k) * k);
    return r;
}

/// [n k]_{q^{-1}}
inline HalfLaurent qbinom_balanced_inv(int n, int k) {
    HalfLaurent r = qbinom_sym(n, k);
    r.shift_in_place(-(n - k) * k);
    return r;
}

/// Monomial c * q^{q2/2} x^{x2/2}
struct QXMonomial {
    int q2 = 0;
    int x2 = 0;
};

/// multiply s by prod_{i<length} (1 - q^{dir*i} * base)
inline FSeries poch_multiply(const FSeries& s, QXMonomial base, int direction, int length) {
    FSeries r = s;
    for (int i = 0; i < length; ++i) {
        const int q2 = base.q2 + 2 * direction * i;
        FSeries t(r.x_order() + std::min(0, base.x2));
        for (const auto& [e, c] : r.terms()) {
            t.add(e, c);
            t.add(e + base.x2, -c.shifted(q2));
        }
        r = std::move(t);
    }
    return r;
}

/// multiply s by prod_{i<length} 1/(1 - q^{dir*i} * base), expanded at x = 0
inline FSeries poch_divide(const FSeries& s, QXMonomial base, int direction, int length) {
    if (length > 0 && base.x2 <= 0) throw std::invalid_argument("poch_divide needs a positive x-power in the base");
    FSeries r = s;
    for (int i = 0; i < length; ++i) {
        const int q2 = base.q2 + 2 * direction * i;
        if (r.is_zero()) break;
        std::map<int, HalfLaurent> acc;
        const int lo = r.terms().begin()->first;
        for (int e = lo; e < r.x_order(); ++e) {
            HalfLaurent v = r.coeff(e);
            auto prev = acc.find(e - base.x2);
            if (prev != acc.end()) v.add_scaled_shifted(prev->second, Int(1), q2);
            if (!v.is_zero()) acc.emplace(e, std::move(v));
        }
        FSeries t(r.x_order());
        for (auto& [e, c] : acc) t.add(e, c);
        r = std::move(t);
    }
    return r;
}

inline FSeries substitute_q_inverse(const FSeries& s) {
    FSeries r(s.x_order());
    for (const auto& [e, c] : s.terms()) r.add(e, c.reflected());
    return r;
}

/// binom(a, m) for rational a
inline Rational rational_binomial(const Rational& a, int m) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r = r * (a - i) / (i + 1);
    return r;
}

/// Taylor coefficients of c(q = 1 + h) through h^{h_order}
inline std::vector<Rational> expand_at_one(const HalfLaurent& c, int h_order, bool allow_half = false) {
    std::vector<Rational> out(h_order + 1);
    c.for_each([&](int e2, const Int& v) {
        if (e2 % 2 != 0 && !allow_half) throw std::domain_error("half-integer q power in expand_at_one");
        Rational a(e2, 2);
        for (int m = 0; m <= h_order; ++m) out[m] += Rational(v) * rational_binomial(a, m);
    });
    return out;
}

/// Taylor coefficients of c(q = zeta_p + h) through h^{h_order}
inline std::vector<CycElem> expand_at_root(const HalfLaurent& c, int p, int h_order) {
    std::vector<CycElem> out(h_order + 1, CycElem(p));
    c.for_each([&](int e2, const Int& v) {
        if (e2 % 2 != 0) throw std::domain_error("half-integer q power in expand_at_root");
        const long k = e2 / 2;
        for (int m = 0; m <= h_order; ++m) {
            Int b = gen_binomial(k, m);
            if (b == 0) continue;
            CycElem z = CycElem::zeta_pow(p, k - m);
            z *= Rational(v * b);
            out[m] += z;
        }
    });
    return out;
}

}  // namespace fk
