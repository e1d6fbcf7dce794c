#pragma once

#include "fk/braid/diagram.hpp"
#include "fk/qalg/numeric.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

/// sign (+1/-1) per segment id
struct InversionDatum {
    std::vector<int> signs;

    friend bool operator==(const InversionDatum& a, const InversionDatum& b) { return a.signs == b.signs; }
    friend bool operator<(const InversionDatum& a, const InversionDatum& b) { return a.signs < b.signs; }
};

/// integer value per segment id
struct State {
    std::vector<long> values;
};

/// How the '-' multicycle is traced when a crossing has two '-' inputs.
enum class SignRule {
    ContinuationOpenCut,  // strands continue; the component through the open strand is an arc
    Continuation,         // strands continue; every cycle counts
    Jump                  // '-' inputs pass straight up
};

inline const char* sign_rule_name(SignRule r) {
    switch (r) {
        case SignRule::ContinuationOpenCut: return "continuation-open-cut";
        case SignRule::Continuation: return "continuation";
        case SignRule::Jump: return "jump";
    }
    return "?";
}

inline SignRule parse_sign_rule(const std::string& s) {
    if (s == "continuation-open-cut") return SignRule::ContinuationOpenCut;
    if (s == "continuation") return SignRule::Continuation;
    if (s == "jump") return SignRule::Jump;
    throw std::invalid_argument("unknown sign rule: " + s);
}

/// allowed (TL,TR / BL,BR) sign patterns
inline bool pattern_allowed(int crossing_sign, int bl, int br, int tl, int tr) {
    if (tl == tr && bl == br && tl == bl) return true;  // ++/++ and --/--
    if (tl == -1 && tr == 1 && bl == 1 && br == -1) return true;  // -+/+-
    if (tl == 1 && tr == -1 && bl == -1 && br == 1) return true;  // +-/-+
    if (crossing_sign > 0) return tl == -1 && tr == 1 && bl == -1 && br == 1;  // -+/-+
    return tl == 1 && tr == -1 && bl == 1 && br == -1;                         // +-/+-
}

inline bool validate_datum(const DiagramGraph& g, const InversionDatum& d) {
    if (static_cast<int>(d.signs.size()) != g.segment_count) throw std::invalid_argument("datum does not cover every segment");
    for (int s : d.signs)
        if (s != 1 && s != -1) throw std::invalid_argument("datum sign must be +-1");
    for (const auto& c : g.crossings)
        if (!pattern_allowed(c.sign, d.signs[c.bl], d.signs[c.br], d.signs[c.tl], d.signs[c.tr])) return false;
    return true;
}

/// all valid data, by DFS over crossings (deterministic order: '+' before '-')
inline std::vector<InversionDatum> enumerate_data(const DiagramGraph& g) {
    std::vector<InversionDatum> out;
    std::vector<int> sg(g.segment_count, 0);
    const int V = static_cast<int>(g.crossings.size());
    std::function<void(int)> rec = [&](int k) {
        if (k == V) {
            // segments without crossings are free
            std::vector<int> free_segs;
            for (int s = 0; s < g.segment_count; ++s)
                if (sg[s] == 0) free_segs.push_back(s);
            const int f = static_cast<int>(free_segs.size());
            for (int mask = 0; mask < (1 << f); ++mask) {
                InversionDatum d{sg};
                for (int t = 0; t < f; ++t) d.signs[free_segs[t]] = (mask >> t & 1) ? -1 : 1;
                out.push_back(d);
            }
            return;
        }
        const auto& c = g.crossings[k];
        const int ids[4] = {c.bl, c.br, c.tl, c.tr};
        for (int mask = 0; mask < 16; ++mask) {
            int v[4];
            bool ok = true;
            for (int t = 0; t < 4; ++t) {
                v[t] = (mask >> (3 - t) & 1) ? -1 : 1;
                if (sg[ids[t]] != 0 && sg[ids[t]] != v[t]) ok = false;
            }
            // repeated ids inside one crossing must agree
            for (int a = 0; a < 4 && ok; ++a)
                for (int b = a + 1; b < 4; ++b)
                    if (ids[a] == ids[b] && v[a] != v[b]) ok = false;
            if (!ok || !pattern_allowed(c.sign, v[0], v[1], v[2], v[3])) continue;
            std::vector<int> saved = sg;
            for (int t = 0; t < 4; ++t) sg[ids[t]] = v[t];
            rec(k + 1);
            sg = saved;
        }
    };
    rec(0);
    return out;
}

/// brute force over all 2^{|E|} sign maps
inline std::vector<InversionDatum> enumerate_data_bruteforce(const DiagramGraph& g) {
    std::vector<InversionDatum> out;
    const int E = g.segment_count;
    for (long mask = 0; mask < (1L << E); ++mask) {
        InversionDatum d{std::vector<int>(E)};
        for (int s = 0; s < E; ++s) d.signs[s] = (mask >> s & 1) ? -1 : 1;
        if (validate_datum(g, d)) out.push_back(d);
    }
    return out;
}

inline std::string datum_to_string(const DiagramGraph& g, const InversionDatum& d) {
    std::string s;
    for (int seg : traversal_order(g)) s += d.signs[seg] > 0 ? '+' : '-';
    return s;
}

inline InversionDatum datum_from_string(const DiagramGraph& g, const std::string& text) {
    auto order = traversal_order(g);
    std::vector<int> sgn;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char ch = text[k];
        if (ch == '+')
            sgn.push_back(1);
        else if (ch == '-')
            sgn.push_back(-1);
        else if (static_cast<unsigned char>(ch) == 0xE2 && k + 2 < text.size()) {  // U+2212 minus sign
            sgn.push_back(-1);
            k += 2;
        } else
            throw std::invalid_argument("bad datum character");
    }
    if (sgn.size() != order.size()) throw std::invalid_argument("datum length does not match segment count");
    InversionDatum d{std::vector<int>(g.segment_count)};
    for (std::size_t k = 0; k < order.size(); ++k) d.signs[order[k]] = sgn[k];
    if (!validate_datum(g, d)) throw std::invalid_argument("datum violates the allowed crossing patterns");
    return d;
}

inline InversionDatum uniform_datum(const DiagramGraph& g, int sign) {
    return InversionDatum{std::vector<int>(g.segment_count, sign)};
}

/// homogeneous braid check: each generator index used with one sign only
inline bool is_homogeneous(const BraidWord& b, std::vector<int>* eps = nullptr) {
    std::vector<int> e(b.strands, 0);
    for (const auto& l : b.letters) {
        if (e[l.index] == 0)
            e[l.index] = l.sign;
        else if (e[l.index] != l.sign)
            return false;
    }
    if (eps) *eps = e;
    return true;
}

/// natural datum of a homogeneous braid: position p>=1 carries eps_p, position 0 carries left_sign
inline InversionDatum natural_datum(const DiagramGraph& g, int left_sign) {
    std::vector<int> eps;
    if (!is_homogeneous(g.braid, &eps)) throw std::invalid_argument("braid is not homogeneous");
    InversionDatum d{std::vector<int>(g.segment_count, 1)};
    for (int s = 0; s < g.segment_count; ++s) {
        const int p = g.seg_pos[s];
        d.signs[s] = (p == 0) ? left_sign : (eps[p] == 0 ? 1 : eps[p]);
    }
    return d;
}

/// number of closed components of the '-' multicycle
inline int closed_components(const DiagramGraph& g, const InversionDatum& d, SignRule rule = SignRule::ContinuationOpenCut) {
    std::vector<int> succ(g.segment_count, -1);
    for (const auto& c : g.crossings) {
        const int sbl = d.signs[c.bl], sbr = d.signs[c.br], stl = d.signs[c.tl], str = d.signs[c.tr];
        const int nin = (sbl < 0) + (sbr < 0);
        if (nin == 2) {
            if (rule == SignRule::Jump) {
                succ[c.bl] = c.tl;
                succ[c.br] = c.tr;
            } else {
                succ[c.bl] = c.tr;
                succ[c.br] = c.tl;
            }
        } else if (nin == 1) {
            const int in = sbl < 0 ? c.bl : c.br;
            const int out = stl < 0 ? c.tl : c.tr;
            succ[in] = out;
        }
        (void)str;
    }
    std::vector<bool> seen(g.segment_count, false);
    int count = 0;
    const int open_seg = g.bottoms[g.open_strand];
    for (int s = 0; s < g.segment_count; ++s) {
        if (d.signs[s] > 0 || seen[s]) continue;
        bool through_open = false;
        int t = s;
        while (t >= 0 && !seen[t]) {
            seen[t] = true;
            if (t == open_seg) through_open = true;
            t = succ[t];
            if (t < 0) {
                // a '-' segment with no crossing at all (bare strand) closes on itself
                break;
            }
        }
        if (rule == SignRule::ContinuationOpenCut && through_open) continue;
        ++count;
    }
    return count;
}

inline State ground_state(const DiagramGraph& g, const InversionDatum& d) {
    State s;
    s.values.resize(g.segment_count);
    for (int e = 0; e < g.segment_count; ++e) s.values[e] = d.signs[e] > 0 ? 0 : -1;
    return s;
}

/// l = -sum_{j>=2} iota(b_j)/2 + sum_c sgn(c)(1 + iota(BR) iota(TR))/4
inline Rational ell_rational(const DiagramGraph& g, const InversionDatum& d) {
    Rational l = 0;
    for (int j = 0; j < g.strands; ++j)
        if (j != g.open_strand) l -= Rational(d.signs[g.bottoms[j]], 2);
    for (const auto& c : g.crossings) l += Rational(c.sign * (1 + d.signs[c.br] * d.signs[c.tr]), 4);
    return l;
}

inline long ell(const DiagramGraph& g, const InversionDatum& d) {
    Rational l = ell_rational(g, d);
    if (boost::multiprecision::denominator(l) != 1) throw std::domain_error("l is not an integer");
    return static_cast<long>(boost::multiprecision::numerator(l));
}

/// w/2 - sum eps_i / 2 for homogeneous words
inline long ell_homogeneous(const BraidWord& b) {
    std::vector<int> eps;
    if (!is_homogeneous(b, &eps)) throw std::invalid_argument("braid is not homogeneous");
    long twice = b.writhe();
    for (int i = 1; i < b.strands; ++i) twice -= eps[i];
    if (twice % 2 != 0) throw std::domain_error("homogeneous l is not an integer");
    return twice / 2;
}

/// mirror datum: signs flipped on the mirrored diagram
inline InversionDatum mirror_datum(const InversionDatum& d) {
    InversionDatum r = d;
    for (auto& s : r.signs) s = -s;
    return r;
}

}  // namespace fk
