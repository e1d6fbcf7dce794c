#pragma once

#include "fk/inversion/datum.hpp"
#include "fk/inversion/niceness.hpp"
#include "fk/statesum/kernel.hpp"
#include "fk/statesum/rmatrix.hpp"

#include <functional>
#include <future>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace fk {

struct NotNiceError : std::domain_error {
    explicit NotNiceError(const std::string& m) : std::domain_error(m) {}
};

/// P(s) expanded at x = 0 and truncated at doubled x-order x_order
inline FSeries evaluate_state(const DiagramGraph& g, const State& s, int x_order) {
    long q2 = 0;
    for (int j = 0; j < g.strands; ++j)
        if (j != g.open_strand) q2 += -1 - 2 * s.values[g.bottoms[j]];
    std::vector<RFactors> fs;
    int shift_total = -(g.strands - 1);
    for (const auto& c : g.crossings) {
        RFactors f = r_factors(c.sign, s.values[c.bl], s.values[c.br], s.values[c.tl], s.values[c.tr]);
        if (f.zero) return FSeries(x_order);
        shift_total += static_cast<int>(f.x2);
        fs.push_back(std::move(f));
    }
    // monomial part first, then the (1 - q^a x)^{+-1} factors
    HalfLaurent coef = qpow2(static_cast<int>(q2));
    for (const auto& f : fs) {
        coef = coef * f.binom;
        coef.shift_in_place(static_cast<int>(f.q2));
        if (f.sign < 0) coef = -coef;
    }
    FSeries r(x_order);
    r.add(shift_total, coef);
    for (const auto& f : fs) {
        for (long m : f.mul_q2) r = poch_multiply(r, {static_cast<int>(m), 2}, 1, 1);
        for (long d : f.div_q2) r = poch_divide(r, {static_cast<int>(d), 2}, 1, 1);
    }
    r.set_order(x_order);
    return r;
}

/// doubled minimal x-degree of P(s)
inline long state_degree2(const DiagramGraph& g, const State& s) {
    long d = -(g.strands - 1);
    for (const auto& c : g.crossings) d += crossing_degree2(c, s.values[c.br], s.values[c.tr]);
    return d;
}

/// is s a valid state for the datum (signs, conservation, nonzero R at every crossing)
inline bool is_valid_state(const DiagramGraph& g, const InversionDatum& d, const State& s) {
    for (int e = 0; e < g.segment_count; ++e)
        if ((s.values[e] >= 0 ? 1 : -1) != d.signs[e]) return false;
    for (const auto& c : g.crossings)
        if (r_factors(c.sign, s.values[c.bl], s.values[c.br], s.values[c.tl], s.values[c.tr]).zero) return false;
    return true;
}

/**
 * Shared propagation data: LP boxes under a degree budget and the
 * lower-bound potentials at every cut.
 */
struct SumContext {
    const DiagramGraph* g = nullptr;
    const InversionDatum* d = nullptr;
    long max_degree2 = 0;  // keep states with doubled degree <= this
    std::vector<SegmentBox> boxes;
    std::vector<CutBound> cuts;
    std::vector<long> cut_den, cut_base;
    std::vector<std::vector<long>> cut_slopes;

    SumContext(const DiagramGraph& graph, const InversionDatum& datum, long max_deg2) : g(&graph), d(&datum), max_degree2(max_deg2) {
        NicenessCertificate cert = niceness_check(graph, datum);
        if (!cert.nice) throw NotNiceError("inversion datum is not nice");
        boxes = segment_boxes(graph, datum, Rational(max_deg2, 2));
        cuts = cut_bounds(graph, datum);
        for (const auto& cb : cuts) {
            cut_den.push_back(static_cast<long>(cb.den));
            cut_base.push_back(static_cast<long>(cb.base));
            std::vector<long> sl;
            for (const auto& v : cb.islopes) sl.push_back(static_cast<long>(v));
            cut_slopes.push_back(std::move(sl));
        }
    }

    /// numerator of 2 * LB_k (over cut_den[k]) for the given frontier and bottom values
    long lb2_num(int k, const std::vector<long>& frontier, const std::vector<long>& bottoms) const {
        const auto& cb = cuts[k];
        long v = cut_base[k];
        for (std::size_t t = 0; t < cb.param_segments.size(); ++t) {
            const int s = cb.param_segments[t];
            const long val = s < g->strands ? bottoms[s] : frontier[g->seg_pos[s]];
            v += cut_slopes[k][t] * val;
        }
        return 2 * v;
    }

    /// can a partial product of doubled degree deg2 after k crossings still reach the budget
    bool admissible(int k, long deg2, const std::vector<long>& frontier, const std::vector<long>& bottoms) const {
        return deg2 * cut_den[k] + lb2_num(k, frontier, bottoms) <= max_degree2 * cut_den[k];
    }

    /// exclusive doubled x-limit for a partial product after k crossings when the final order is X
    int truncation_limit(int k, int X, const std::vector<long>& frontier, const std::vector<long>& bottoms) const {
        const long den = cut_den[k];
        const long num = static_cast<long>(X) * den - lb2_num(k, frontier, bottoms);
        // ceil(num / den)
        long q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return static_cast<int>(q);
    }

    /// the bottom-value vectors to try, with b_1 pinned to its ground value
    std::vector<std::vector<long>> boundary_vectors() const {
        std::vector<std::vector<long>> out;
        const int n = g->strands;
        std::vector<long> b(n);
        b[0] = d->signs[g->bottoms[0]] > 0 ? 0 : -1;
        std::function<void(int)> rec = [&](int p) {
            if (p == n) {
                out.push_back(b);
                return;
            }
            const auto& bx = boxes[g->bottoms[p]];
            for (long v = bx.lo; v <= bx.hi; ++v) {
                b[p] = v;
                rec(p + 1);
            }
        };
        if (boxes[g->bottoms[0]].lo > boxes[g->bottoms[0]].hi) return out;
        rec(1);
        return out;
    }

    /// the admissible (i', j') splits at crossing k for inputs (i, j)
    template <class F>
    void for_each_split(int k, long i, long j, const std::vector<long>& bottoms, F&& f) const {
        const auto& c = g->crossings[k];
        long lo = boxes[c.tr].lo, hi = boxes[c.tr].hi;
        lo = std::max(lo, i + j - boxes[c.tl].hi);
        hi = std::min(hi, i + j - boxes[c.tl].lo);
        if (c.tr < g->strands) lo = std::max(lo, bottoms[c.tr]), hi = std::min(hi, bottoms[c.tr]);
        if (c.tl < g->strands) {
            const long forced = i + j - bottoms[c.tl];
            lo = std::max(lo, forced);
            hi = std::min(hi, forced);
        }
        for (long jp = lo; jp <= hi; ++jp) {
            const long ip = i + j - jp;
            if ((ip >= 0 ? 1 : -1) != d->signs[c.tl] || (jp >= 0 ? 1 : -1) != d->signs[c.tr]) continue;
            RFactors r = r_factors(c.sign, i, j, ip, jp);
            if (r.zero) continue;
            f(ip, jp, r);
        }
    }
};

/**
 * All valid states with doubled degree <= max_degree2, by bottom-to-top
 * propagation. The visitor receives each state once.
 */
inline void enumerate_states(const DiagramGraph& g, const InversionDatum& d, long max_degree2,
                             const std::function<void(const State&)>& visit) {
    SumContext ctx(g, d, max_degree2);
    const int V = static_cast<int>(g.crossings.size());
    const int n = g.strands;
    for (const auto& b : ctx.boundary_vectors()) {
        State s;
        s.values.assign(g.segment_count, 0);
        for (int p = 0; p < n; ++p) s.values[p] = b[p];
        long deg0 = -(n - 1);
        if (!ctx.admissible(0, deg0, b, b)) continue;
        std::vector<long> frontier = b;
        std::function<void(int, long)> rec = [&](int k, long deg2) {
            if (k == V) {
                if (deg2 <= max_degree2) visit(s);
                return;
            }
            const auto& c = g.crossings[k];
            const long i = frontier[c.pos], j = frontier[c.pos + 1];
            ctx.for_each_split(k, i, j, b, [&](long ip, long jp, const RFactors&) {
                frontier[c.pos] = ip;
                frontier[c.pos + 1] = jp;
                const long nd = deg2 + crossing_degree2(c, j, jp);
                if (ctx.admissible(k + 1, nd, frontier, b)) {
                    s.values[c.tl] = ip;
                    s.values[c.tr] = jp;
                    rec(k + 1, nd);
                }
                frontier[c.pos] = i;
                frontier[c.pos + 1] = j;
            });
        };
        rec(0, deg0);
    }
}

struct FKResult {
    FSeries unnormalized;  // Z^inv, doubled x-order 2N + 2
    FSeries normalized;    // (x^{1/2} - x^{-1/2}) Z^inv, doubled x-order 2N + 1
    int d = 0;
    long ell = 0;
    bool leading_is_monomial = false;
    int leading_sign = 0;
    int s = 0;  // closed components of the multicycle
    int x_order = 0;
    SignRule rule = SignRule::ContinuationOpenCut;
    std::string braid;
    std::string datum;
    std::size_t boundary_count = 0;
    std::size_t big_int_fallbacks = 0;
};

namespace detail {

template <class T>
KSeries<T> propagate(const SumContext& ctx, const std::vector<long>& b, int X) {
    const DiagramGraph& g = *ctx.g;
    const int n = g.strands;
    const int V = static_cast<int>(g.crossings.size());
    std::map<std::vector<long>, KSeries<T>> cur, next;
    {
        long q2 = 0;
        for (int p = 1; p < n; ++p) q2 += -1 - 2 * b[p];
        KSeries<T> init;
        init.x0 = -(n - 1);
        init.rows.push_back(Laurent<T>(static_cast<int>(q2), T(1)));
        if (!ctx.admissible(0, init.x0, b, b)) return {};
        init.truncate(ctx.truncation_limit(0, X, b, b));
        if (init.rows.empty()) return {};
        cur.emplace(b, std::move(init));
    }
    std::map<std::tuple<int, long, long>, Laurent<T>> binom_cache;
    for (int k = 0; k < V; ++k) {
        next.clear();
        const auto& c = g.crossings[k];
        for (auto& [key, ser] : cur) {
            const long i = key[c.pos], j = key[c.pos + 1];
            const int smin = ser.min_x2();
            std::vector<long> nk = key;
            ctx.for_each_split(k, i, j, b, [&](long ip, long jp, const RFactors& f) {
                nk[c.pos] = ip;
                nk[c.pos + 1] = jp;
                if (!ctx.admissible(k + 1, smin + f.x2, nk, b)) return;
                const int limit = ctx.truncation_limit(k + 1, X, nk, b);
                if (smin + f.x2 >= limit) return;
                // the binomial depends on (i, j') for positive and (j, i') for negative crossings
                auto bk = c.sign > 0 ? std::make_tuple(1, i, jp) : std::make_tuple(-1, j, ip);
                auto it = binom_cache.find(bk);
                if (it == binom_cache.end()) it = binom_cache.emplace(bk, f.binom.template convert<T>()).first;
                KSeries<T> t = ser;
                t.apply(f, it->second, limit);
                if (t.rows.empty()) return;
                auto pos = next.find(nk);
                if (pos == next.end())
                    next.emplace(nk, std::move(t));
                else
                    pos->second.add(t);
            });
        }
        std::swap(cur, next);
    }
    KSeries<T> out;
    for (auto& [key, ser] : cur) {
        if (key != b) throw std::logic_error("propagation ended away from the boundary values");
        out.add(ser);
    }
    return out;
}

}  // namespace detail

/**
 * Inverted state sum through x^{1/2} x^{N} in the normalized series
 * (x_order = N). Threads partition the boundary vectors; the reduction is exact,
 * so the result does not depend on the thread count.
 */
inline FKResult inverted_sum(const DiagramGraph& g, const InversionDatum& d, int N, SignRule rule = SignRule::ContinuationOpenCut,
                             int threads = 1) {
    if (!validate_datum(g, d)) throw std::invalid_argument("invalid inversion datum");
    const int X = 2 * N + 2;
    SumContext ctx(g, d, X - 1);
    auto bvs = ctx.boundary_vectors();
    FKResult res;
    res.x_order = N;
    res.rule = rule;
    res.braid = format_braid(g.braid);
    res.datum = g.segment_count > 0 ? datum_to_string(g, d) : std::string();
    res.boundary_count = bvs.size();
    threads = std::max(1, threads);
    std::vector<FSeries> partial(threads, FSeries(X));
    std::vector<std::size_t> fallbacks(threads, 0);
    auto work = [&](int t) {
        for (std::size_t idx = t; idx < bvs.size(); idx += threads) {
            FSeries piece(X);
            try {
                piece = detail::propagate<Checked>(ctx, bvs[idx], X).to_fseries(X);
            } catch (const OverflowError&) {
                ++fallbacks[t];
                piece = detail::propagate<Int>(ctx, bvs[idx], X).to_fseries(X);
            }
            partial[t] += piece;
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::future<void>> fut;
        for (int t = 0; t < threads; ++t) fut.push_back(std::async(std::launch::async, work, t));
        for (auto& f : fut) f.get();
    }
    FSeries Z(X);
    for (int t = 0; t < threads; ++t) {
        Z += partial[t];
        res.big_int_fallbacks += fallbacks[t];
    }
    res.s = closed_components(g, d, rule);
    if (res.s % 2 != 0) Z = -Z;
    res.unnormalized = Z;
    FSeries F = Z.shifted(1) - Z.shifted(-1);
    F.set_order(X - 1);
    res.normalized = F;
    if (!F.is_zero()) {
        const int lead = F.dx();
        res.d = (lead + 1) / 2;
        const HalfLaurent& lc = F.leading();
        res.leading_is_monomial = lc.term_count() == 1;
        if (res.leading_is_monomial) {
            res.ell = lc.min_exp() / 2;
            res.leading_sign = lc.coeff(lc.min_exp()) > 0 ? 1 : -1;
        }
    }
    return res;
}

/// slow reference: sum evaluate_state over enumerate_states
inline FSeries inverted_sum_by_states(const DiagramGraph& g, const InversionDatum& d, int N, SignRule rule = SignRule::ContinuationOpenCut) {
    const int X = 2 * N + 2;
    FSeries Z(X);
    enumerate_states(g, d, X - 1, [&](const State& s) { Z += evaluate_state(g, s, X); });
    if (closed_components(g, d, rule) % 2 != 0) Z = -Z;
    return Z;
}

}  // namespace fk
