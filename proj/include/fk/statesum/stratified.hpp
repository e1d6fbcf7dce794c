#pragma once

#include "fk/inversion/datum.hpp"
#include "fk/qalg/qseries.hpp"
#include "fk/statesum/kernel.hpp"
#include "fk/statesum/rmatrix.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <cstdint>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace fk {

struct StratumBudgetError : std::runtime_error {
    explicit StratumBudgetError(const std::string& m) : std::runtime_error(m) {}
};

enum class Convergence { Stable, Oscillating, Divergent };

inline const char* convergence_name(Convergence c) {
    switch (c) {
        case Convergence::Stable: return "stable";
        case Convergence::Oscillating: return "oscillating";
        case Convergence::Divergent: return "divergent";
    }
    return "?";
}

struct StratifiedOptions {
    int x_order = 2;        // coefficients f_0 .. f_{x_order-1} of the normalized series
    int q_order2 = 40;      // doubled q-order of every reported coefficient
    int max_weight = 20;
    int window = 4;         // a coefficient is settled when unchanged over this many final weights
    long node_budget = 5000000;  // frontier entries per stratum
};

/// One x-coefficient f_k of the normalized series.
struct StratifiedCoefficient {
    int index = 0;  // k in f_k
    int x2 = 0;     // doubled x-exponent
    Convergence status = Convergence::Stable;
    QSeriesTrunc value;  // stable part, or the even/odd average when oscillating
    std::optional<QSeriesTrunc> even, odd;
    int stable_weight = 0;  // largest weight at which a settled q-coefficient last changed
};

struct StratifiedResult {
    int genus = 0;
    int s = 0;
    int max_weight = 0;
    std::vector<FSeries> strata;      // signed contribution of each weight to Z^str
    std::vector<FSeries> z_partials;  // sum_{w' <= w} of the strata
    std::vector<FSeries> partials;    // (x^{1/2} - x^{-1/2}) times the above
    std::vector<StratifiedCoefficient> unnormalized;  // coefficients of Z^str from x^g
    std::vector<StratifiedCoefficient> normalized;    // f_k of F, from x^{g - 1/2}
    // per (x2, q2) of the normalized series: weight at which the partial sum last changed
    std::map<std::pair<int, int>, int> last_change;
};

namespace detail {

/// bottom vectors with b_1 = -1, b_j <= -1 and sum_{j >= 2} (|b_j| - 1) = w
inline std::vector<std::vector<long>> weight_boundaries(int n, int w) {
    std::vector<std::vector<long>> out;
    std::vector<long> b(n, -1);
    std::function<void(int, int)> rec = [&](int p, int left) {
        if (p == n - 1) {
            b[p] = -1 - left;
            out.push_back(b);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            b[p] = -1 - e;
            rec(p + 1, left - e);
        }
    };
    if (n == 1) {
        if (w == 0) out.push_back(b);
        return out;
    }
    rec(1, w);
    return out;
}

/// R-matrix entries of one crossing type, memoized with their converted binomials
template <class T>
struct EntryCache {
    struct Entry {
        RFactors f;
        Laurent<T> binom;
        long min_q2 = 0;
    };
    std::unordered_map<std::uint64_t, Entry> map;

    const Entry& get(int sign, long i, long j, long jp);
};

/// the admissible all-negative splits (i', j') of a crossing with inputs (i, j)
template <class T, class F>
void negative_splits(const DiagramGraph& g, const Crossing& c, long i, long j, const std::vector<long>& b, EntryCache<T>& cache,
                     F&& f) {
    const int n = g.strands;
    for (long jp = i + j + 1; jp <= -1; ++jp) {
        const long ip = i + j - jp;
        if (c.tl < n && ip != b[c.tl]) continue;
        if (c.tr < n && jp != b[c.tr]) continue;
        const auto& e = cache.get(c.sign, i, j, jp);
        if (e.f.zero) continue;
        f(ip, jp, e);
    }
}

/// smallest doubled q-exponent an entry can contribute (LONG_MIN / 4 if unbounded)
inline long entry_min_q2(const RFactors& f) {
    if (!f.div_q2.empty()) return LONG_MIN / 4;
    long m = f.q2 + f.binom.min_exp();
    for (long e : f.mul_q2) m += std::min(0L, e);
    return m;
}

template <class T>
const typename EntryCache<T>::Entry& EntryCache<T>::get(int sign, long i, long j, long jp) {
    // entries of one stratum stay far inside 20-bit offsets
    const auto pack = [](long v) { return static_cast<std::uint64_t>(v + (1L << 19)) & 0xFFFFF; };
    const std::uint64_t key = (static_cast<std::uint64_t>(sign > 0) << 60) | (pack(i) << 40) | (pack(j) << 20) | pack(jp);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
    Entry e;
    e.f = r_factors(sign, i, j, i + j - jp, jp);
    if (!e.f.zero) {
        e.binom = e.f.binom.template convert<T>();
        e.min_q2 = entry_min_q2(e.f);
        e.f.binom = HalfLaurent();
    }
    return map.emplace(key, std::move(e)).first->second;
}

/**
 * Sum of P(s) over the states with bottom values b, keeping doubled x-exponents
 * below X and doubled q-exponents below Q. A first pass records the reachable
 * frontiers; a backward pass gives, per frontier, the exact minimal x- and
 * q-degree the remaining crossings can add, which bounds both truncations.
 */
template <class T>
KSeries<T> stratum_piece(const DiagramGraph& g, const std::vector<long>& b, int X, int Q, long budget, long& nodes,
                         EntryCache<T>& cache) {
    const int n = g.strands;
    const int V = static_cast<int>(g.crossings.size());
    using Key = std::vector<long>;
    constexpr long kInf = LONG_MAX / 4;
    std::vector<std::map<Key, std::pair<long, long>>> rest(V + 1);  // (min x2, min q2) still to come
    rest[0].emplace(b, std::make_pair(kInf, kInf));
    for (int k = 0; k < V; ++k) {
        const auto& c = g.crossings[k];
        for (const auto& [key, unused] : rest[k]) {
            (void)unused;
            Key nk = key;
            negative_splits(g, c, key[c.pos], key[c.pos + 1], b, cache, [&](long ip, long jp, const auto&) {
                nk[c.pos] = ip;
                nk[c.pos + 1] = jp;
                if (rest[k + 1].emplace(nk, std::make_pair(kInf, kInf)).second && ++nodes > budget)
                    throw StratumBudgetError("stratum exceeds the node budget");
            });
        }
    }
    {
        auto it = rest[V].find(b);
        if (it == rest[V].end()) return {};
        it->second = {0, 0};
    }
    for (int k = V - 1; k >= 0; --k) {
        const auto& c = g.crossings[k];
        for (auto& [key, val] : rest[k]) {
            Key nk = key;
            negative_splits(g, c, key[c.pos], key[c.pos + 1], b, cache, [&](long ip, long jp, const auto& e) {
                nk[c.pos] = ip;
                nk[c.pos + 1] = jp;
                const auto& nv = rest[k + 1].at(nk);
                if (nv.first >= kInf) return;
                val.first = std::min(val.first, nv.first + e.f.x2);
                val.second = std::min(val.second, nv.second + e.min_q2);
            });
        }
    }
    std::map<Key, KSeries<T>> cur, next;
    {
        const auto& r0 = rest[0].at(b);
        if (r0.first >= kInf) return {};
        long q2 = 0;
        for (int p = 1; p < n; ++p) q2 += -1 - 2 * b[p];
        KSeries<T> init;
        init.x0 = -(n - 1);
        init.rows.push_back(Laurent<T>(static_cast<int>(q2), T(1)));
        init.truncate(static_cast<int>(X - r0.first));
        for (auto& row : init.rows) row.truncate_above(static_cast<int>(Q - 1 - r0.second));
        init.normalize();
        if (init.rows.empty()) return {};
        cur.emplace(b, std::move(init));
    }
    for (int k = 0; k < V; ++k) {
        next.clear();
        const auto& c = g.crossings[k];
        for (auto& [key, ser] : cur) {
            Key nk = key;
            negative_splits(g, c, key[c.pos], key[c.pos + 1], b, cache, [&](long ip, long jp, const auto& e) {
                nk[c.pos] = ip;
                nk[c.pos + 1] = jp;
                const auto& nv = rest[k + 1].at(nk);
                if (nv.first >= kInf) return;
                KSeries<T> t = ser;
                t.apply(e.f, e.binom, static_cast<int>(X - nv.first));
                if (nv.second > LONG_MIN / 8) {
                    for (auto& row : t.rows) row.truncate_above(static_cast<int>(Q - 1 - nv.second));
                    t.normalize();
                }
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

/**
 * Classify the x-coefficients x2_first, x2_first + 2, ... of a sequence of
 * partial sums. A q-coefficient is settled when constant over the last
 * `window` weights, or alternating with period 2 over them.
 */
inline std::vector<StratifiedCoefficient> settle(const std::vector<FSeries>& partials, int x2_first, const StratifiedOptions& opt,
                                                 std::map<std::pair<int, int>, int>* last_change) {
    const int W = static_cast<int>(partials.size()) - 1;
    auto value_at = [&](int w, int x2, int q2) -> Int {
        const auto& t = partials[w].terms();
        auto it = t.find(x2);
        return it == t.end() ? Int(0) : it->second.coeff(q2);
    };
    std::map<int, std::map<int, bool>> keys;  // x2 -> q2 set
    for (int w = 0; w <= W; ++w)
        for (const auto& [x2, c] : partials[w].terms())
            c.for_each([&](int q2, const Int&) {
                if (q2 < opt.q_order2) keys[x2][q2] = true;
            });
    const int evenW = (W % 2 == 0) ? W : W - 1;
    const int oddW = (W % 2 == 0) ? W - 1 : W;
    std::vector<StratifiedCoefficient> out;
    for (int k = 0; k < opt.x_order; ++k) {
        StratifiedCoefficient sc;
        sc.index = k;
        sc.x2 = x2_first + 2 * k;
        int first_unsettled = opt.q_order2;
        int first_unstable = opt.q_order2;
        HalfLaurent stable, even_v, odd_v;
        for (const auto& [q2, unused] : keys[sc.x2]) {
            (void)unused;
            int last = 0;
            for (int w = 1; w <= W; ++w)
                if (value_at(w, sc.x2, q2) != value_at(w - 1, sc.x2, q2)) last = w;
            if (last_change) (*last_change)[{sc.x2, q2}] = last;
            const Int v = value_at(W, sc.x2, q2);
            if (last <= W - opt.window) {
                stable.add_term(q2, v);
                even_v.add_term(q2, v);
                odd_v.add_term(q2, v);
                sc.stable_weight = std::max(sc.stable_weight, last);
                continue;
            }
            first_unstable = std::min(first_unstable, q2);
            bool period2 = W - opt.window >= 1;
            for (int w = W - opt.window + 2; w <= W && period2; ++w)
                if (value_at(w, sc.x2, q2) != value_at(w - 2, sc.x2, q2)) period2 = false;
            if (!period2) {
                first_unsettled = std::min(first_unsettled, q2);
                continue;
            }
            even_v.add_term(q2, value_at(evenW, sc.x2, q2));
            odd_v.add_term(q2, value_at(oddW, sc.x2, q2));
        }
        if (first_unstable == opt.q_order2) {
            sc.status = Convergence::Stable;
            sc.value = QSeriesTrunc(stable, opt.q_order2);
        } else if (first_unsettled > first_unstable) {
            sc.status = Convergence::Oscillating;
            sc.even = QSeriesTrunc(even_v, first_unsettled);
            sc.odd = QSeriesTrunc(odd_v, first_unsettled);
            HalfLaurent avg;
            bool integral = true;
            (even_v + odd_v).for_each([&](int q2, const Int& c) {
                if (c % 2 != 0) integral = false;
                avg.add_term(q2, c / 2);
            });
            if (!integral) throw std::domain_error("even/odd average is not integral");
            sc.value = QSeriesTrunc(avg, first_unsettled);
        } else {
            sc.status = Convergence::Divergent;
            sc.value = QSeriesTrunc(stable, first_unstable);
        }
        out.push_back(std::move(sc));
    }
    return out;
}

/// memoized entries of one stratum
struct StratumCaches {
    EntryCache<Checked> fast;
    EntryCache<Int> slow;
};

}  // namespace detail

/// sum_{s in Omega_w} P(s) with doubled x-exponents below X and doubled q-exponents below Q
inline FSeries stratum_sum(const DiagramGraph& g, int w, int X, int Q, long budget = 5000000) {
    FSeries out(X);
    long nodes = 0;
    detail::StratumCaches caches;
    auto& fast = caches.fast;
    auto& slow = caches.slow;
    for (const auto& b : detail::weight_boundaries(g.strands, w)) {
        const long before = nodes;
        try {
            out += detail::stratum_piece<Checked>(g, b, X, Q, budget, nodes, fast).to_fseries(X);
        } catch (const OverflowError&) {
            nodes = before;
            out += detail::stratum_piece<Int>(g, b, X, Q, budget, nodes, slow).to_fseries(X);
        }
    }
    return out;
}

/**
 * Stratified state sum for the all-'-' datum, accumulated weight by weight.
 * A q-coefficient is settled when its partial sum is constant over the last
 * `window` weights, or alternates between two values (period 2) over them.
 */
inline StratifiedResult stratified_sum(const DiagramGraph& g, const StratifiedOptions& opt,
                                       SignRule rule = SignRule::ContinuationOpenCut) {
    StratifiedResult r;
    r.max_weight = opt.max_weight;
    InversionDatum minus = uniform_datum(g, -1);
    r.s = closed_components(g, minus, rule);
    // the ground stratum fixes the leading x-power
    FSeries ground = stratum_sum(g, 0, 1 << 20, 1 << 20, opt.node_budget);
    if (ground.is_zero()) throw std::domain_error("ground state contributes zero");
    const int gx2 = ground.dx();
    r.genus = gx2 / 2;
    const int X = gx2 + 2 * opt.x_order + 1;  // Z through x^{g + x_order}
    const int FX = gx2 - 1 + 2 * opt.x_order;
    FSeries Z(X);
    for (int w = 0; w <= opt.max_weight; ++w) {
        FSeries piece = stratum_sum(g, w, X, opt.q_order2, opt.node_budget);
        if (r.s % 2 != 0) piece = -piece;
        r.strata.push_back(piece);
        Z += piece;
        r.z_partials.push_back(Z);
        FSeries F = Z.shifted(1) - Z.shifted(-1);
        F.set_order(FX);
        r.partials.push_back(F);
    }
    r.unnormalized = detail::settle(r.z_partials, gx2, opt, nullptr);
    r.normalized = detail::settle(r.partials, gx2 - 1, opt, &r.last_change);
    return r;
}

}  // namespace fk
