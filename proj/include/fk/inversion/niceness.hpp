#pragma once

#include "fk/inversion/datum.hpp"
#include "fk/inversion/lp.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace fk {

/// which inequality a support row encodes: sgn(c)(BL - TR) >= 0 at crossing k
struct SupportRow {
    int crossing = 0;
};

/**
 * The polyhedron of states of (g, iota) restricted to crossings >= first,
 * with the segments in `fixed` pinned to given values.
 */
struct StatePolyhedron {
    LinearProgram lp;
    std::vector<int> var_of_seg;  // -1 if not involved
    std::vector<int> seg_of_var;
    std::vector<int> support_rows;  // LP row per support inequality
    std::vector<int> support_crossing;
    std::vector<int> conservation_rows;
    std::vector<int> conservation_crossing;
    std::map<int, int> fix_rows;  // segment -> LP row
};

inline bool has_support_inequality(const Crossing& c, const InversionDatum& d) {
    return d.signs[c.br] == d.signs[c.tl] && d.signs[c.bl] == d.signs[c.tr];
}

/// affine x-degree contribution of crossing c (doubled): sgn(c)(j + j' + 1)
inline long crossing_degree2(const Crossing& c, long j, long jp) { return c.sign * (j + jp + 1); }

/**
 * Build the LP. When `bound_fixed` is false, pinned segments carry no sign
 * bounds (they act as parameters).
 */
inline StatePolyhedron build_polyhedron(const DiagramGraph& g, const InversionDatum& d, int first_crossing,
                                        const std::map<int, long>& fixed, bool include_trace_term) {
    StatePolyhedron P;
    const int V = static_cast<int>(g.crossings.size());
    std::set<int> involved;
    for (int k = first_crossing; k < V; ++k) {
        const auto& c = g.crossings[k];
        involved.insert({c.bl, c.br, c.tl, c.tr});
    }
    for (const auto& [s, v] : fixed) involved.insert(s);
    P.var_of_seg.assign(g.segment_count, -1);
    for (int s : involved) {
        P.var_of_seg[s] = static_cast<int>(P.seg_of_var.size());
        P.seg_of_var.push_back(s);
    }
    const int nv = static_cast<int>(P.seg_of_var.size());
    P.lp = LinearProgram(nv);
    for (int v = 0; v < nv; ++v) {
        const int s = P.seg_of_var[v];
        if (fixed.count(s)) continue;
        if (d.signs[s] > 0)
            P.lp.lower[v] = Rational(0);
        else
            P.lp.upper[v] = Rational(-1);
    }
    for (int k = first_crossing; k < V; ++k) {
        const auto& c = g.crossings[k];
        std::map<int, Rational> row;
        row[P.var_of_seg[c.bl]] += 1;
        row[P.var_of_seg[c.br]] += 1;
        row[P.var_of_seg[c.tl]] -= 1;
        row[P.var_of_seg[c.tr]] -= 1;
        std::vector<std::pair<int, Rational>> rc;
        for (auto& [v, a] : row)
            if (a != 0) rc.push_back({v, a});
        P.conservation_rows.push_back(P.lp.add_row(rc, Sense::EQ, 0));
        P.conservation_crossing.push_back(k);
        if (has_support_inequality(c, d)) {
            std::map<int, Rational> sr;
            sr[P.var_of_seg[c.bl]] += c.sign;
            sr[P.var_of_seg[c.tr]] -= c.sign;
            std::vector<std::pair<int, Rational>> rs;
            for (auto& [v, a] : sr)
                if (a != 0) rs.push_back({v, a});
            P.support_rows.push_back(P.lp.add_row(rs, Sense::GE, 0));
            P.support_crossing.push_back(k);
        }
        // objective: sgn(c)(j + j' + 1)/2
        P.lp.objective[P.var_of_seg[c.br]] += Rational(c.sign, 2);
        P.lp.objective[P.var_of_seg[c.tr]] += Rational(c.sign, 2);
        P.lp.objective_const += Rational(c.sign, 2);
    }
    if (include_trace_term) P.lp.objective_const -= Rational(g.strands - 1, 2);
    for (const auto& [s, val] : fixed) P.fix_rows[s] = P.lp.add_row({{P.var_of_seg[s], Rational(1)}}, Sense::EQ, Rational(val));
    return P;
}

struct NicenessCertificate {
    bool nice = false;
    bool bounded = false;   // LP minimum exists
    bool coercive = false;  // no recession ray with nonpositive slope
    Rational min_degree = 0;
    std::vector<Rational> alpha;  // per segment, multiplier of |a_e| - |s0_e|
    std::vector<Rational> gamma;  // per crossing (0 where no support inequality)
    std::vector<Rational> mu;     // per crossing, conservation multiplier
    Rational nu = 0;              // open strand pin multiplier
    Rational beta = 0;            // constant: degree = sum alpha |a| + sum gamma (..) + beta on feasible points
    std::vector<long> ray;        // integer witness when not coercive or unbounded
    std::vector<Rational> minimizer;
};

inline std::vector<long> integer_ray(const std::vector<Rational>& r) {
    Int l = 1;
    for (const auto& v : r) l = boost::multiprecision::lcm(l, Int(boost::multiprecision::denominator(v)));
    std::vector<long> out;
    Int gg = 0;
    std::vector<Int> ints;
    for (const auto& v : r) {
        Int t = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
        ints.push_back(t);
        gg = boost::multiprecision::gcd(gg, t < 0 ? Int(-t) : t);
    }
    if (gg == 0) gg = 1;
    for (auto& t : ints) out.push_back(static_cast<long>(t / gg));
    return out;
}

/// degree functional (as exact rational) of an arbitrary segment assignment
inline Rational degree_functional(const DiagramGraph& g, const std::vector<long>& a) {
    Rational deg = -Rational(g.strands - 1, 2);
    for (const auto& c : g.crossings) deg += Rational(crossing_degree2(c, a[c.br], a[c.tr]), 2);
    return deg;
}

inline NicenessCertificate niceness_check(const DiagramGraph& g, const InversionDatum& d) {
    NicenessCertificate cert;
    const int open_seg = g.bottoms[g.open_strand];
    const long open_val = d.signs[open_seg] > 0 ? 0 : -1;
    StatePolyhedron P = build_polyhedron(g, d, 0, {{open_seg, open_val}}, true);
    LPResult r = solve_lp(P.lp);
    if (r.status == LPStatus::Infeasible) throw std::logic_error("state polyhedron is empty");
    const int E = g.segment_count;
    if (r.status == LPStatus::Unbounded) {
        std::vector<Rational> full(E, Rational(0));
        for (int s = 0; s < E; ++s)
            if (P.var_of_seg[s] >= 0) full[s] = r.ray[P.var_of_seg[s]];
        cert.ray = integer_ray(full);
        return cert;
    }
    cert.bounded = true;
    cert.min_degree = r.value;
    cert.minimizer.assign(E, Rational(0));
    cert.alpha.assign(E, Rational(0));
    for (int s = 0; s < E; ++s) {
        const int v = P.var_of_seg[s];
        if (v < 0) continue;
        cert.minimizer[s] = r.x[v];
        cert.alpha[s] = d.signs[s] > 0 ? r.lower_mult[v] : r.upper_mult[v];
    }
    const int V = static_cast<int>(g.crossings.size());
    cert.gamma.assign(V, Rational(0));
    cert.mu.assign(V, Rational(0));
    for (std::size_t t = 0; t < P.support_rows.size(); ++t) cert.gamma[P.support_crossing[t]] = r.duals[P.support_rows[t]];
    for (std::size_t t = 0; t < P.conservation_rows.size(); ++t) cert.mu[P.conservation_crossing[t]] = r.duals[P.conservation_rows[t]];
    cert.nu = r.duals[P.fix_rows.at(open_seg)];
    cert.beta = r.value;
    for (int s = 0; s < E; ++s)
        if (d.signs[s] < 0) cert.beta -= cert.alpha[s];
    cert.beta += cert.nu * 0;

    // recession cone: iota_e r_e >= 0, r_open = 0, conservation, support, normalization sum iota_e r_e = 1
    LinearProgram rc(E);
    std::vector<std::pair<int, Rational>> norm;
    for (int s = 0; s < E; ++s) {
        if (d.signs[s] > 0)
            rc.lower[s] = Rational(0);
        else
            rc.upper[s] = Rational(0);
        norm.push_back({s, Rational(d.signs[s])});
    }
    for (const auto& c : g.crossings) {
        std::map<int, Rational> row;
        row[c.bl] += 1;
        row[c.br] += 1;
        row[c.tl] -= 1;
        row[c.tr] -= 1;
        std::vector<std::pair<int, Rational>> rr;
        for (auto& [v, a] : row)
            if (a != 0) rr.push_back({v, a});
        rc.add_row(rr, Sense::EQ, 0);
        if (has_support_inequality(c, d)) {
            std::map<int, Rational> sr;
            sr[c.bl] += c.sign;
            sr[c.tr] -= c.sign;
            std::vector<std::pair<int, Rational>> rs;
            for (auto& [v, a] : sr)
                if (a != 0) rs.push_back({v, a});
            rc.add_row(rs, Sense::GE, 0);
        }
        rc.objective[c.br] += Rational(c.sign, 2);
        rc.objective[c.tr] += Rational(c.sign, 2);
    }
    rc.add_row({{open_seg, Rational(1)}}, Sense::EQ, 0);
    rc.add_row(norm, Sense::EQ, 1);
    LPResult rr = solve_lp(rc);
    if (rr.status == LPStatus::Infeasible) {
        cert.coercive = true;  // polyhedron is bounded
    } else if (rr.status == LPStatus::Unbounded) {
        cert.coercive = false;
        cert.ray = integer_ray(rr.ray);
    } else {
        cert.coercive = rr.value > 0;
        if (!cert.coercive) cert.ray = integer_ray(rr.x);
    }
    cert.nice = cert.bounded && cert.coercive && cert.min_degree >= 0;
    return cert;
}

/// check the certificate identity at a state (conservation assumed)
inline Rational certificate_value(const DiagramGraph& g, const InversionDatum& d, const NicenessCertificate& cert,
                                  const std::vector<long>& a) {
    Rational v = cert.beta;
    for (int s = 0; s < g.segment_count; ++s) v += cert.alpha[s] * Rational(a[s] < 0 ? -a[s] : a[s]);
    for (std::size_t k = 0; k < g.crossings.size(); ++k) {
        const auto& c = g.crossings[k];
        if (has_support_inequality(c, d)) v += cert.gamma[k] * Rational(c.sign * (a[c.bl] - a[c.tr]));
    }
    return v;
}

struct SegmentBox {
    long lo = 0, hi = 0;
};

/// per-segment integer bounds over states with degree <= max_degree
inline std::vector<SegmentBox> segment_boxes(const DiagramGraph& g, const InversionDatum& d, const Rational& max_degree) {
    const int open_seg = g.bottoms[g.open_strand];
    const long open_val = d.signs[open_seg] > 0 ? 0 : -1;
    StatePolyhedron P = build_polyhedron(g, d, 0, {{open_seg, open_val}}, true);
    std::vector<std::pair<int, Rational>> degrow;
    for (int v = 0; v < P.lp.num_vars; ++v)
        if (P.lp.objective[v] != 0) degrow.push_back({v, P.lp.objective[v]});
    P.lp.add_row(degrow, Sense::LE, max_degree - P.lp.objective_const);
    std::vector<SegmentBox> boxes(g.segment_count);
    for (int s = 0; s < g.segment_count; ++s) {
        const int v = P.var_of_seg[s];
        if (v < 0) {
            boxes[s] = {d.signs[s] > 0 ? 0L : -1L, d.signs[s] > 0 ? 0L : -1L};
            continue;
        }
        LinearProgram lp = P.lp;
        std::fill(lp.objective.begin(), lp.objective.end(), Rational(0));
        lp.objective_const = 0;
        lp.objective[v] = 1;
        LPResult lo = solve_lp(lp);
        lp.objective[v] = -1;
        LPResult hi = solve_lp(lp);
        if (lo.status == LPStatus::Infeasible) {
            boxes[s] = {1, 0};  // empty
            continue;
        }
        if (lo.status != LPStatus::Optimal || hi.status != LPStatus::Optimal)
            throw std::domain_error("segment box is unbounded: datum is not nice");
        boxes[s] = {static_cast<long>(ceil_rational(lo.value)), static_cast<long>(floor_rational(-hi.value))};
    }
    return boxes;
}

/**
 * Linear lower bound on the x-degree still to come after `cut` crossings:
 * value + sum_e slope_e (val_e - s0_e) over the parameter segments.
 */
struct CutBound {
    std::vector<int> param_segments;
    std::vector<Rational> slopes;
    Rational value = 0;
    // integer form: LB = (base + sum islope_e * val_e) / den
    Int den = 1;
    Int base = 0;
    std::vector<Int> islopes;
};

inline std::vector<CutBound> cut_bounds(const DiagramGraph& g, const InversionDatum& d) {
    const int V = static_cast<int>(g.crossings.size());
    std::vector<CutBound> out(V + 1);
    State s0 = ground_state(g, d);
    for (int k = 0; k < V; ++k) {
        // frontier after k crossings
        std::vector<int> cur(g.strands);
        for (int p = 0; p < g.strands; ++p) cur[p] = g.bottoms[p];
        for (int t = 0; t < k; ++t) {
            cur[g.crossings[t].pos] = g.crossings[t].tl;
            cur[g.crossings[t].pos + 1] = g.crossings[t].tr;
        }
        std::map<int, long> fixed;
        for (int p = 0; p < g.strands; ++p) {
            fixed[cur[p]] = s0.values[cur[p]];
            fixed[g.bottoms[p]] = s0.values[g.bottoms[p]];
        }
        StatePolyhedron P = build_polyhedron(g, d, k, fixed, false);
        LPResult r = solve_lp(P.lp);
        if (r.status != LPStatus::Optimal) throw std::domain_error("remaining-degree LP is not bounded: datum is not nice");
        CutBound cb;
        cb.value = r.value;
        for (const auto& [s, row] : P.fix_rows) {
            cb.param_segments.push_back(s);
            cb.slopes.push_back(r.duals[row]);
        }
        out[k] = cb;
    }
    out[V] = CutBound{};
    for (auto& cb : out) {
        Int den = boost::multiprecision::denominator(cb.value);
        for (const auto& sl : cb.slopes) den = boost::multiprecision::lcm(den, Int(boost::multiprecision::denominator(sl)));
        cb.den = den;
        Rational base = cb.value;
        for (std::size_t t = 0; t < cb.param_segments.size(); ++t) base -= cb.slopes[t] * Rational(s0.values[cb.param_segments[t]]);
        cb.base = boost::multiprecision::numerator(base * Rational(den));
        cb.islopes.clear();
        for (const auto& sl : cb.slopes) cb.islopes.push_back(boost::multiprecision::numerator(sl * Rational(den)));
    }
    return out;
}

}  // namespace fk
