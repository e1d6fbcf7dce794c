#pragma once

#include "fk/braid/braid.hpp"

#include <functional>
#include <random>
#include <set>
#include <vector>

namespace fk {

struct WalkOptions {
    std::uint64_t seed = 1;
    int iterations = 100;
    int moves_per_iteration = 4;
    int max_length = 32;
    int max_strands = 6;
    double markov_rate = 0.05;
};

/// All moves applicable to b at its current state (conjugations and stabilizations excluded).
inline std::vector<Move> applicable_relation_moves(const BraidWord& b) {
    std::vector<Move> out;
    const int len = static_cast<int>(b.letters.size());
    for (int p = 0; p + 1 < len; ++p) {
        if (std::abs(b.letters[p].index - b.letters[p + 1].index) >= 2) out.push_back({MoveKind::Commute, p, {}});
        if (b.letters[p] == b.letters[p + 1].inverse()) out.push_back({MoveKind::FreeReduce, p, {}});
        if (p + 2 < len) {
            const Letter a = b.letters[p], c = b.letters[p + 1], d = b.letters[p + 2];
            if (a == d && a.sign == c.sign && std::abs(a.index - c.index) == 1) out.push_back({MoveKind::YangBaxter, p, {}});
        }
    }
    if (len > 0) out.push_back({MoveKind::Rotate, 0, {}});
    return out;
}

/**
 * Random sequence of braid moves; emits normalized, deduplicated words.
 * The visitor returns false to stop the walk.
 */
inline void random_walk(const BraidWord& start, const WalkOptions& opt, const std::function<bool(const BraidWord&)>& visitor) {
    std::mt19937_64 rng(opt.seed);
    std::set<BraidWord> seen;
    BraidWord cur = normalize(start);
    seen.insert(cur);
    if (!visitor(cur)) return;
    for (int it = 0; it < opt.iterations; ++it) {
        BraidWord w = cur;
        for (int m = 0; m < opt.moves_per_iteration; ++m) {
            std::uniform_real_distribution<double> u01(0.0, 1.0);
            const double r = u01(rng);
            try {
                if (r < opt.markov_rate) {
                    if (w.strands > 1 && (rng() & 1)) {
                        // destabilize needs the last strand once at the end; try rotations
                        for (std::size_t k = 0; k < w.letters.size(); ++k) {
                            try {
                                w = apply_move(w, {MoveKind::Destabilize, 0, {}});
                                break;
                            } catch (const MoveError&) {
                                w = apply_move(w, {MoveKind::Rotate, 0, {}});
                            }
                        }
                    } else if (w.strands < opt.max_strands && static_cast<int>(w.letters.size()) < opt.max_length) {
                        w = apply_move(w, {MoveKind::Stabilize, 0, {1, (rng() & 1) ? 1 : -1}});
                    }
                } else if (r < 0.25 && w.strands > 1 && static_cast<int>(w.letters.size()) + 2 <= opt.max_length) {
                    std::uniform_int_distribution<int> gi(1, w.strands - 1);
                    Letter g{gi(rng), (rng() & 1) ? 1 : -1};
                    w = free_reduce(apply_move(w, {MoveKind::Conjugate, 0, g}));
                } else {
                    auto moves = applicable_relation_moves(w);
                    if (moves.empty()) continue;
                    std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
                    w = apply_move(w, moves[pick(rng)]);
                }
            } catch (const MoveError&) {
            }
        }
        cur = normalize(w);
        if (seen.insert(cur).second) {
            if (!visitor(cur)) return;
        }
    }
}

}  // namespace fk
