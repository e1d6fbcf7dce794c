#pragma once

#include "fk/jones/alexander.hpp"
#include "fk/jones/habiro.hpp"
#include "fk/qalg/cyclotomic.hpp"
#include "fk/qalg/qcomb.hpp"
#include "fk/statesum/inverted.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

struct MMRWindowError : std::domain_error {
    int required_x_order;
    MMRWindowError(const std::string& m, int required) : std::domain_error(m), required_x_order(required) {}
};

struct MMRMismatchError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Laurent polynomial in x with coefficients in Q(zeta_p); zero coefficients are not stored
using CycLaurent = std::map<int, CycElem>;

enum class MMRSource { FromFK, FromHabiro };

struct MMRData {
    AlexanderPoly delta;
    int p = 1;
    MMRSource source = MMRSource::FromFK;
    std::vector<CycLaurent> numerators;  // P^(0)..P^(J)
    std::vector<bool> verified;          // layer j was checked beyond its support
};

namespace detail {

inline CycLaurent cyc_mul(const CycLaurent& a, const CycLaurent& b, int hi) {
    CycLaurent r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            if (ea + eb > hi) break;
            auto [it, fresh] = r.try_emplace(ea + eb, ca * cb);
            if (!fresh) it->second += ca * cb;
        }
    std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
    return r;
}

/// Delta(x^p)^e as a CycLaurent
inline CycLaurent delta_power(const AlexanderPoly& delta, int p, int e) {
    CycLaurent base;
    delta.poly.for_each([&](int k, const Int& c) { base.emplace(p * k, CycElem(p, Rational(c))); });
    CycLaurent r{{0, CycElem(p, Rational(1))}};
    for (int t = 0; t < e; ++t) r = cyc_mul(r, base, INT_MAX / 2);
    return r;
}

inline CycElem cyc_coeff(const CycLaurent& a, int e, int p) {
    auto it = a.find(e);
    return it == a.end() ? CycElem(p) : it->second;
}

/**
 * Numerators P^(j) from the unnormalized series expanded at q = zeta_p + h.
 * Layer j times Delta(x^p)^{2j+1} is known up to x^{N - (2j+1)pd}; the part up
 * to x^0 fixes P^(j) by x <-> 1/x symmetry and everything beyond is checked.
 */
inline MMRData mmr_layers(const FKResult& F, int J, const AlexanderPoly& delta, int p) {
    const int d = delta.d();
    const int xo = F.unnormalized.x_order();
    if (xo % 2 != 0) throw std::domain_error("unnormalized series must have an integer x-order");
    const int N = xo / 2 - 1;  // x^N is the last known power
    std::vector<CycLaurent> layers(J + 1);
    for (const auto& [x2, c] : F.unnormalized.terms()) {
        if (x2 % 2 != 0) throw std::domain_error("half-integer x power in the unnormalized series");
        auto e = expand_at_root(c, p, J);
        for (int j = 0; j <= J; ++j)
            if (!e[j].is_zero()) layers[j].emplace(x2 / 2, e[j]);
    }
    MMRData out;
    out.delta = delta;
    out.p = p;
    out.source = MMRSource::FromFK;
    for (int j = 0; j <= J; ++j) {
        const int spread = (2 * j + 1) * p * d;
        const int hi = N - spread;  // last known exponent of the product
        const int support = ((2 * j + 1) * p - 1) * d;
        if (hi < 0)
            throw MMRWindowError("x-window too small for layer " + std::to_string(j) + ": need x-order " + std::to_string(spread),
                                 spread);
        CycLaurent prod = cyc_mul(layers[j], delta_power(delta, p, 2 * j + 1), hi);
        for (const auto& [e, c] : prod)
            if (e < -support) throw MMRMismatchError("layer " + std::to_string(j) + " has a term below the degree bound");
        CycLaurent P;
        for (const auto& [e, c] : prod) {
            if (e > 0) break;
            P.emplace(e, c);
            if (e < 0) P.emplace(-e, c);
        }
        for (int e = 1; e <= hi; ++e)
            if (cyc_coeff(prod, e, p) != cyc_coeff(P, e, p))
                throw MMRMismatchError("layer " + std::to_string(j) + " is not symmetric at x^" + std::to_string(e));
        out.numerators.push_back(std::move(P));
        out.verified.push_back(hi > support);
    }
    return out;
}

}  // namespace detail

/// MMR numerators at q = 1 read off a nice knot's unnormalized series
inline MMRData mmr_from_fk(const FKResult& F, int J, const AlexanderPoly& delta) { return detail::mmr_layers(F, J, delta, 1); }

/// numerators at q = zeta_p + h
inline MMRData mmr_at_root(const FKResult& F, int p, int J, const AlexanderPoly& delta) {
    if (p < 1) throw std::invalid_argument("root order must be positive");
    return detail::mmr_layers(F, J, delta, p);
}

/// P^(1) in the variable y = x + 1/x - 2
inline std::vector<Int> p1_in_y(const HabiroData& h, const AlexanderPoly& delta) {
    const int d = delta.d();
    const int M = static_cast<int>(h.derivs_at_one.size()) - 1;
    if (M <= 2 * d) throw MMRWindowError("Habiro data must reach a_" + std::to_string(2 * d + 1), 2 * d + 1);
    const std::vector<Int> d3 = poly_pow(delta.in_y(), 3);
    std::vector<Rational> prod(M + 1);
    for (int k = 0; k <= M; ++k)
        for (int i = 0; i <= k && i < static_cast<int>(d3.size()); ++i) prod[k] += Rational(d3[i]) * h.derivs_at_one[k - i];
    std::vector<Int> out;
    for (int k = 0; k <= M; ++k) {
        if (k > 2 * d) {
            if (prod[k] != 0) throw MMRMismatchError("Delta^3 times the Habiro derivative series does not terminate");
            continue;
        }
        if (denominator(prod[k]) != 1) throw MMRMismatchError("non-integral coefficient in P^(1)");
        out.push_back(numerator(prod[k]));
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

/// substitute y = x - 2 + 1/x
inline CycLaurent y_to_x(const std::vector<Int>& py, int p = 1) {
    IntLaurent acc;
    for (std::size_t k = 0; k < py.size(); ++k) {
        if (py[k] == 0) continue;
        const int kk = static_cast<int>(k);
        for (int t = 0; t <= 2 * kk; ++t) {
            Int b = binomial(2 * kk, t) * py[k];
            acc.add_term(kk - t, t % 2 == 0 ? b : Int(-b));
        }
    }
    CycLaurent r;
    acc.for_each([&](int e, const Int& c) { r.emplace(e, CycElem(p, Rational(c))); });
    return r;
}

/// P^(1) from the Habiro coefficients: Delta^3(y) sum_j a_j'(1) y^j
inline MMRData mmr_from_habiro(const HabiroData& h, const AlexanderPoly& delta) {
    MMRData out;
    out.delta = delta;
    out.source = MMRSource::FromHabiro;
    out.numerators.push_back(CycLaurent{{0, CycElem(1, Rational(1))}});
    out.numerators.push_back(y_to_x(p1_in_y(h, delta)));
    out.verified = {true, true};
    return out;
}

/// coefficients at x^e as integers; throws if a coefficient is not rational-integral
inline IntLaurent integral_part(const CycLaurent& P) {
    IntLaurent r;
    for (const auto& [e, c] : P) {
        for (std::size_t k = 1; k < c.coeffs().size(); ++k)
            if (c.coeffs()[k] != 0) throw std::domain_error("coefficient is not rational");
        const Rational& v = c.coeffs()[0];
        if (denominator(v) != 1) throw std::domain_error("coefficient is not an integer");
        r.add_term(e, numerator(v));
    }
    return r;
}

inline std::string pretty_cyc(const CycLaurent& P, bool nonnegative_only = false, const std::string& z = "z") {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : P) {
        if (nonnegative_only && e < 0) continue;
        std::string s = c.str(z);
        const bool compound = s.find_first_of("+-", 1) != std::string::npos;
        bool neg = false;
        if (!compound && s[0] == '-') {
            neg = true;
            s.erase(0, 1);
        }
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (compound) s = "(" + s + ")";
        if (e == 0) {
            os << s;
            continue;
        }
        if (s != "1") os << s << "*";
        os << "x" << (e != 1 ? "^" + std::to_string(e) : "");
    }
    return first ? "0" : os.str();
}

}  // namespace fk
