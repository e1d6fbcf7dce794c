#pragma once

#include "fk/qalg/numeric.hpp"
#include "fk/qalg/xseries.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fk {

/// q-degrees of consecutive x-coefficients; nullopt marks a zero coefficient
struct DegreeSequence {
    int first_index = 0;  // n of the first entry, the coefficient of x^{n(+1/2)}
    std::vector<std::optional<Rational>> values;

    /// start of the longest gap-free run that reaches the end
    std::size_t tail_start() const {
        std::size_t s = values.size();
        while (s > 0 && values[s - 1]) --s;
        return s;
    }
    /// gap-free tail as plain values with the index of its first entry
    std::vector<Rational> tail(int* start_index = nullptr) const {
        const std::size_t s = tail_start();
        if (start_index) *start_index = first_index + static_cast<int>(s);
        std::vector<Rational> out;
        for (std::size_t k = s; k < values.size(); ++k) out.push_back(*values[k]);
        return out;
    }
};

struct DegreeSequences {
    DegreeSequence min, max;
};

/**
 * Minimal and maximal q-degrees of the coefficients of x^{n} (or x^{n+1/2}) for
 * n from the leading term up to the truncation order. Index n is the integer
 * part of the x-exponent.
 */
inline DegreeSequences degree_sequences(const FSeries& F) {
    DegreeSequences out;
    if (F.is_zero()) return out;
    const int lo = F.dx(), hi = F.x_order();
    auto floor2 = [](int x2) { return x2 >= 0 ? x2 / 2 : -((-x2 + 1) / 2); };
    out.min.first_index = out.max.first_index = floor2(lo);
    for (int x2 = lo; x2 < hi; x2 += 2) {
        auto it = F.terms().find(x2);
        if (it == F.terms().end()) {
            out.min.values.emplace_back();
            out.max.values.emplace_back();
            continue;
        }
        out.min.values.emplace_back(Rational(it->second.min_exp(), 2));
        out.max.values.emplace_back(Rational(it->second.max_exp(), 2));
    }
    return out;
}

struct FitOptions {
    int max_period = 12;
    int max_onset = 10;   // largest allowed offset of the periodic stretch
    int min_periods = 2;  // the periodic stretch must cover this many periods
    std::optional<int> start_index;  // drop entries before this n
};

/**
 * delta(n) = a n^2 + b(n) n + c(n) for n >= onset with b, c periodic of the
 * given period. The generating function sum_{k>=0} delta(start + k) t^k is
 * numerator / denominator with denominator (1 - t)^2 (1 - t^period).
 */
struct QuasiPolyFit {
    bool found = false;
    std::string reason;
    int start = 0;   // index of the first fitted value
    int period = 0;
    int onset = 0;   // fit holds for n >= onset
    Rational a = 0;
    bool a_constant = true;
    std::vector<Rational> a_residues;  // a per residue class n mod period
    std::vector<Rational> b, c;        // indexed by n mod period
    std::vector<bool> present;         // residue classes with nonzero coefficients
    std::optional<Rational> slope;
    std::vector<Rational> gf_numerator, gf_denominator;
    std::vector<Rational> second_differences;

    /// fitted degree at n, or nullopt for a residue class of zero coefficients
    std::optional<Rational> value(int n) const {
        const int r = ((n % period) + period) % period;
        if (!present[r]) return std::nullopt;
        return a_residues[r] * n * n + b[r] * n + c[r];
    }
};

namespace detail {

inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline std::vector<Rational> poly_add(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

inline void trim(std::vector<Rational>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/// b and c per residue from a n^2 removed; false if a residue class is inconsistent
inline bool solve_residues(const std::vector<Rational>& v, int start, int first, int p, const std::vector<Rational>& a,
                           std::vector<Rational>& b, std::vector<Rational>& c) {
    b.assign(p, 0);
    c.assign(p, 0);
    for (int r = 0; r < p; ++r) {
        std::vector<std::pair<int, Rational>> pts;
        for (int k = first; k < static_cast<int>(v.size()); ++k) {
            const int n = start + k;
            if (((n % p) + p) % p != r) continue;
            pts.emplace_back(n, v[k] - a[r] * n * n);
        }
        if (pts.size() < 2) return false;
        const auto& [n0, u0] = pts[0];
        const auto& [n1, u1] = pts[1];
        b[r] = (u1 - u0) / (n1 - n0);
        c[r] = u0 - b[r] * n0;
        for (const auto& [n, u] : pts)
            if (b[r] * n + c[r] != u) return false;
    }
    return true;
}

inline void build_generating_function(QuasiPolyFit& f, const std::vector<Rational>& v, const std::vector<Rational>& e, int o) {
    const int p = f.period;
    std::vector<Rational> one_minus_tp(p + 1);
    one_minus_tp[0] = 1;
    one_minus_tp[p] = -1;
    // A(t) = sum_{n<o} e_n t^n (1 - t^p) + t^o sum_{k<p} e_{o+k} t^k
    std::vector<Rational> head(e.begin(), e.begin() + o);
    std::vector<Rational> A = poly_mul(head, one_minus_tp);
    std::vector<Rational> per(o + p);
    for (int k = 0; k < p; ++k) per[o + k] = e[o + k];
    A = poly_add(A, per);
    std::vector<Rational> init = {v[0], v.size() > 1 ? v[1] - 2 * v[0] : Rational(0)};
    std::vector<Rational> t2A(2);
    t2A.insert(t2A.end(), A.begin(), A.end());
    f.gf_numerator = poly_add(poly_mul(init, one_minus_tp), t2A);
    trim(f.gf_numerator);
    f.gf_denominator = poly_mul({Rational(1), Rational(-2), Rational(1)}, one_minus_tp);
}

/**
 * Residue classes n mod p beyond an offset are either entirely zero or an
 * exact quadratic in n with at least four points. Used when second
 * differences are not periodic or the sequence has gaps.
 */
inline QuasiPolyFit& residue_fit(const std::vector<std::optional<Rational>>& v, int start, const FitOptions& opt, QuasiPolyFit& f) {
    const int L = static_cast<int>(v.size());
    for (int p = 1; p <= opt.max_period; ++p) {
        for (int o = 0; o <= opt.max_onset && L - o >= 4 * p; ++o) {
            std::vector<Rational> a(p), b(p), c(p);
            std::vector<bool> present(p, false);
            bool ok = true, any = false;
            for (int r = 0; r < p && ok; ++r) {
                std::vector<std::pair<int, Rational>> pts;
                int missing = 0;
                for (int k = o; k < L; ++k) {
                    const int n = start + k;
                    if (((n % p) + p) % p != r) continue;
                    if (v[k])
                        pts.emplace_back(n, *v[k]);
                    else
                        ++missing;
                }
                if (pts.empty()) continue;
                if (missing > 0 || pts.size() < 4) {
                    ok = false;
                    break;
                }
                present[r] = any = true;
                // Lagrange through the first three points, checked on the rest
                const auto& [n0, y0] = pts[0];
                const auto& [n1, y1] = pts[1];
                const auto& [n2, y2] = pts[2];
                const Rational d01 = (y1 - y0) / (n1 - n0), d12 = (y2 - y1) / (n2 - n1);
                a[r] = (d12 - d01) / (n2 - n0);
                b[r] = d01 - a[r] * (n0 + n1);
                c[r] = y0 - a[r] * n0 * n0 - b[r] * n0;
                for (const auto& [n, y] : pts)
                    if (a[r] * n * n + b[r] * n + c[r] != y) ok = false;
            }
            if (!ok || !any) continue;
            f.period = p;
            f.onset = start + o;
            f.a_residues = a;
            f.b = b;
            f.c = c;
            f.present = present;
            int first = 0;
            while (!present[first]) ++first;
            f.a = a[first];
            f.a_constant = true;
            for (int r = 0; r < p; ++r)
                if (present[r] && a[r] != f.a) f.a_constant = false;
            if (f.a_constant && f.a != 0) f.slope = 1 / f.a;
            f.reason = f.a_constant ? "" : "quadratic coefficient is not constant across residues";
            f.found = true;
            return f;
        }
    }
    f.reason = "no quasi-polynomial with period <= " + std::to_string(opt.max_period) + " fits " + std::to_string(L) + " values";
    return f;
}

}  // namespace detail

/**
 * Quadratic quasi-polynomial fit of a gap-free sequence v[k] = delta(start + k).
 * The second differences must be exactly periodic beyond some offset; the
 * smallest period is preferred, then the smallest offset. Without such a
 * period, residue classes are tested for individual quadratics, which may
 * yield a quadratic coefficient that is not constant. No fit is forced.
 */
inline QuasiPolyFit fit(const std::vector<Rational>& v, int start = 0, const FitOptions& opt = {}) {
    QuasiPolyFit f;
    f.start = start;
    const int L = static_cast<int>(v.size());
    std::vector<Rational> e;
    for (int k = 0; k + 2 < L; ++k) e.push_back(v[k + 2] - 2 * v[k + 1] + v[k]);
    f.second_differences = e;
    const int E = static_cast<int>(e.size());
    for (int p = 1; p <= opt.max_period; ++p) {
        for (int o = 0; o <= opt.max_onset && E - o >= opt.min_periods * p; ++o) {
            bool periodic = true;
            for (int k = o + p; k < E && periodic; ++k) periodic = e[k] == e[k - p];
            if (!periodic) continue;
            Rational sum = 0;
            for (int k = o; k < o + p; ++k) sum += e[k];
            f.period = p;
            f.onset = start + o;
            f.a = sum / (2 * p);
            f.a_residues.assign(p, f.a);
            f.present.assign(p, true);
            if (!detail::solve_residues(v, start, o, p, f.a_residues, f.b, f.c)) continue;
            if (f.a != 0) f.slope = 1 / f.a;
            detail::build_generating_function(f, v, e, o);
            f.found = true;
            return f;
        }
    }
    std::vector<std::optional<Rational>> w(v.begin(), v.end());
    return detail::residue_fit(w, start, opt, f);
}

/// gap-free tail through second differences, otherwise residue classes over the nonzero entries
inline QuasiPolyFit fit(DegreeSequence s, const FitOptions& opt = {}) {
    if (opt.start_index && *opt.start_index > s.first_index) {
        const int drop = std::min<int>(*opt.start_index - s.first_index, static_cast<int>(s.values.size()));
        s.values.erase(s.values.begin(), s.values.begin() + drop);
        s.first_index += drop;
    }
    int start = 0;
    auto v = s.tail(&start);
    QuasiPolyFit f = fit(v, start, opt);
    if (f.found || s.tail_start() == 0) return f;
    QuasiPolyFit g;
    g.start = s.first_index;
    return detail::residue_fit(s.values, s.first_index, opt, g);
}

/// power-series coefficients of numerator / denominator (denominator constant term nonzero)
inline std::vector<Rational> expand_rational(const std::vector<Rational>& num, const std::vector<Rational>& den, int terms) {
    std::vector<Rational> out(terms);
    for (int n = 0; n < terms; ++n) {
        Rational s = n < static_cast<int>(num.size()) ? num[n] : Rational(0);
        for (int k = 1; k <= n && k < static_cast<int>(den.size()); ++k) s -= den[k] * out[n - k];
        out[n] = s / den[0];
    }
    return out;
}

inline std::string pretty_poly(const std::vector<Rational>& p, const std::string& var = "t") {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k] == 0) continue;
        Rational v = p[k];
        const bool neg = v < 0;
        if (neg) v = -v;
        os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
        first = false;
        if (k == 0 || v != 1) os << to_string(v) << (k > 0 ? "*" : "");
        if (k > 0) os << var << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return first ? "0" : os.str();
}

}  // namespace fk
