#pragma once

#include "fk/braid/braid.hpp"

#include <stdexcept>
#include <vector>

namespace fk {

struct Crossing {
    int sign = 1;
    int pos = 0;  // 0-based position of the left strand
    int bl = -1, br = -1, tl = -1, tr = -1;
};

/**
 * Closed braid diagram. Segment ids 0..n-1 are the bottom segments b_1..b_n
 * (top ends identified with them); segment 0 is the open strand.
 */
struct DiagramGraph {
    BraidWord braid;
    int strands = 1;
    int segment_count = 0;
    std::vector<Crossing> crossings;
    std::vector<int> bottoms;
    int open_strand = 0;
    std::vector<int> seg_pos;   // position carrying the segment
    std::vector<int> seg_from;  // crossing with this segment as output, -1 if none
    std::vector<int> seg_to;    // crossing with this segment as input, -1 if none
    std::vector<int> last_crossing_at;  // per position, index of the last crossing touching it, -1 if none
};

inline DiagramGraph diagram(const BraidWord& b) {
    DiagramGraph g;
    g.braid = b;
    g.strands = b.strands;
    const int n = b.strands;
    std::vector<int> cur(n);
    int next_id = n;
    for (int p = 0; p < n; ++p) cur[p] = p;
    for (const auto& l : b.letters) {
        Crossing c;
        c.sign = l.sign;
        c.pos = l.index - 1;
        c.bl = cur[c.pos];
        c.br = cur[c.pos + 1];
        c.tl = next_id++;
        c.tr = next_id++;
        cur[c.pos] = c.tl;
        cur[c.pos + 1] = c.tr;
        g.crossings.push_back(c);
    }
    // identify the final segment at each position with the bottom one, then compact ids
    std::vector<int> remap(next_id, -1);
    for (int p = 0; p < n; ++p) remap[p] = p;
    for (int p = 0; p < n; ++p)
        if (cur[p] != p) remap[cur[p]] = p;
    int id = n;
    for (int s = n; s < next_id; ++s)
        if (remap[s] < 0) remap[s] = id++;
    g.segment_count = id;
    for (auto& c : g.crossings) {
        c.bl = remap[c.bl];
        c.br = remap[c.br];
        c.tl = remap[c.tl];
        c.tr = remap[c.tr];
    }
    g.bottoms.resize(n);
    for (int p = 0; p < n; ++p) g.bottoms[p] = p;
    g.seg_pos.assign(id, -1);
    g.seg_from.assign(id, -1);
    g.seg_to.assign(id, -1);
    g.last_crossing_at.assign(n, -1);
    for (int p = 0; p < n; ++p) g.seg_pos[p] = p;
    for (std::size_t k = 0; k < g.crossings.size(); ++k) {
        const auto& c = g.crossings[k];
        g.seg_to[c.bl] = g.seg_to[c.bl] < 0 ? static_cast<int>(k) : g.seg_to[c.bl];
        g.seg_to[c.br] = g.seg_to[c.br] < 0 ? static_cast<int>(k) : g.seg_to[c.br];
        g.seg_from[c.tl] = static_cast<int>(k);
        g.seg_from[c.tr] = static_cast<int>(k);
        g.seg_pos[c.tl] = c.pos;
        g.seg_pos[c.tr] = c.pos + 1;
        g.last_crossing_at[c.pos] = static_cast<int>(k);
        g.last_crossing_at[c.pos + 1] = static_cast<int>(k);
    }
    return g;
}

/// number of crossing slots occupied by each segment
inline std::vector<int> segment_incidences(const DiagramGraph& g) {
    std::vector<int> inc(g.segment_count, 0);
    for (const auto& c : g.crossings) {
        ++inc[c.bl];
        ++inc[c.br];
        ++inc[c.tl];
        ++inc[c.tr];
    }
    return inc;
}

/**
 * Segments in the order met when following the knot upward from the
 * bottom end of the open strand to its top end.
 */
inline std::vector<int> traversal_order(const DiagramGraph& g) {
    std::vector<int> order;
    std::vector<bool> seen(g.segment_count, false);
    int s = g.bottoms[g.open_strand];
    while (s >= 0 && !seen[s]) {
        seen[s] = true;
        order.push_back(s);
        const int k = g.seg_to[s];
        if (k < 0) break;
        const auto& c = g.crossings[k];
        s = (s == c.bl) ? c.tr : c.tl;
    }
    if (static_cast<int>(order.size()) != g.segment_count)
        throw std::invalid_argument("closure is not a knot: traversal does not visit every segment");
    return order;
}

}  // namespace fk
