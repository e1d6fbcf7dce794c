#pragma once

#include "fk/braid/diagram.hpp"
#include "fk/qalg/qcomb.hpp"
#include "fk/statesum/rmatrix.hpp"

#include <functional>
#include <map>
#include <tuple>
#include <stdexcept>
#include <vector>

namespace fk {

/// colored Jones polynomials J_0..J_N, normalized so the unknot gives [n+1]
struct JonesTable {
    BraidWord braid;
    std::vector<HalfLaurent> values;
    std::vector<HalfLaurent> unnormalized;
};

/// R-matrix entry with x specialized to q^{-(n+1)} (a finite Laurent polynomial in q^{1/2})
inline HalfLaurent r_entry_at_color(const RFactors& f, int n) {
    if (f.zero) return HalfLaurent();
    HalfLaurent v = f.binom.shifted(static_cast<int>(f.q2 - (n + 1) * f.x2));
    if (f.sign < 0) v = -v;
    for (long m : f.mul_q2) v = v * (HalfLaurent::constant(1) - qpow2(static_cast<int>(m) - 2 * (n + 1)));
    if (!f.div_q2.empty()) throw std::logic_error("division factor in a finite-color entry");
    return v;
}

/**
 * Unnormalized colored Jones J'_n: the state sum with values in {0..n},
 * open strand at the highest weight and x = q^{-(n+1)}. The extended
 * R-matrix is already framing-normalized, so no writhe correction enters.
 */
inline HalfLaurent colored_jones_unnormalized(const BraidWord& b, int n) {
    if (closure_components(b) != 1) throw std::invalid_argument("closure is not a knot");
    if (n == 0) return HalfLaurent::constant(1);
    DiagramGraph g = diagram(b);
    const int S = b.strands;
    const int V = static_cast<int>(g.crossings.size());
    HalfLaurent total;
    std::vector<long> bvec(S, 0);
    std::map<std::tuple<int, long, long, long, long>, HalfLaurent> cache;
    auto entry = [&](int sign, long i, long j, long ip, long jp) -> const HalfLaurent& {
        auto key = std::make_tuple(sign, i, j, ip, jp);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        return cache.emplace(key, r_entry_at_color(r_factors(sign, i, j, ip, jp), n)).first->second;
    };
    std::function<void(int)> rec = [&](int p) {
        if (p < S) {
            for (long v = 0; v <= n; ++v) {
                bvec[p] = v;
                rec(p + 1);
            }
            return;
        }
        long q2 = 0;
        for (int k = 1; k < S; ++k) q2 += n - 2 * bvec[k];
        std::map<std::vector<long>, HalfLaurent> cur, next;
        cur.emplace(bvec, qpow2(static_cast<int>(q2)));
        for (int k = 0; k < V; ++k) {
            next.clear();
            const auto& c = g.crossings[k];
            for (const auto& [key, val] : cur) {
                const long i = key[c.pos], j = key[c.pos + 1];
                for (long jp = 0; jp <= n; ++jp) {
                    const long ip = i + j - jp;
                    if (ip < 0 || ip > n) continue;
                    if (c.tl < S && ip != bvec[c.tl]) continue;
                    if (c.tr < S && jp != bvec[c.tr]) continue;
                    const HalfLaurent& e = entry(c.sign, i, j, ip, jp);
                    if (e.is_zero()) continue;
                    std::vector<long> nk = key;
                    nk[c.pos] = ip;
                    nk[c.pos + 1] = jp;
                    next[nk] += val * e;
                }
            }
            std::swap(cur, next);
        }
        for (const auto& [key, val] : cur) total += val;
    };
    bvec[0] = 0;
    rec(1);
    return total;
}

inline HalfLaurent colored_jones(const BraidWord& b, int n) { return quantum_int(n + 1) * colored_jones_unnormalized(b, n); }

inline JonesTable jones_table(const BraidWord& b, int N) {
    JonesTable t;
    t.braid = b;
    for (int n = 0; n <= N; ++n) {
        t.unnormalized.push_back(colored_jones_unnormalized(b, n));
        t.values.push_back(quantum_int(n + 1) * t.unnormalized.back());
    }
    return t;
}

}  // namespace fk
