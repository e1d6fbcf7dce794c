#pragma once

#include "fk/expansions/mmr.hpp"
#include "fk/expansions/radial.hpp"
#include "fk/qalg/qseries.hpp"
#include "fk/qalg/xseries.hpp"
#include "fk/slopes/quasipoly.hpp"
#include "fk/statesum/inverted.hpp"
#include "fk/statesum/stratified.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fk {

using Json = nlohmann::ordered_json;

inline Json laurent_to_json(const HalfLaurent& p) {
    Json terms = Json::array();
    p.for_each([&](int e2, const Int& c) { terms.push_back({{"q2", e2}, {"c", c.str()}}); });
    return terms;
}

inline HalfLaurent laurent_from_json(const Json& j) {
    HalfLaurent p;
    for (const auto& t : j) p += HalfLaurent(t.at("q2").get<int>(), Int(t.at("c").get<std::string>()));
    return p;
}

/// canonical form: {"x2", "q2", "c"} triples sorted by (x2, q2)
inline Json series_to_json(const FSeries& s) {
    Json terms = Json::array();
    for (const auto& [x2, c] : s.terms())
        c.for_each([&](int q2, const Int& v) { terms.push_back({{"x2", x2}, {"q2", q2}, {"c", v.str()}}); });
    return {{"x_order2", s.x_order()}, {"terms", terms}};
}

inline FSeries series_from_json(const Json& j) {
    FSeries s(j.at("x_order2").get<int>());
    for (const auto& t : j.at("terms"))
        s.add(t.at("x2").get<int>(), HalfLaurent(t.at("q2").get<int>(), Int(t.at("c").get<std::string>())));
    return s;
}

/// q-series coefficients carry their own doubled q-order
inline Json series_to_json(const XSeries<QSeriesTrunc>& s) {
    Json terms = Json::array(), orders = Json::array();
    for (const auto& [x2, c] : s.terms()) {
        orders.push_back({{"x2", x2}, {"q_order2", c.order()}});
        c.known().for_each([&](int q2, const Int& v) { terms.push_back({{"x2", x2}, {"q2", q2}, {"c", v.str()}}); });
    }
    return {{"x_order2", s.x_order()}, {"q_orders", orders}, {"terms", terms}};
}

inline Json trunc_to_json(const QSeriesTrunc& c) { return {{"q_order2", c.order()}, {"terms", laurent_to_json(c.known())}}; }

inline Json cyc_to_json(const CycElem& c) {
    Json v = Json::array();
    for (const auto& r : c.coeffs()) v.push_back(to_string(r));
    return v;
}

inline Json cyc_laurent_to_json(const CycLaurent& P, int p) {
    Json terms = Json::array();
    for (const auto& [e, c] : P) terms.push_back({{"x", e}, {"c", cyc_to_json(c)}});
    return {{"p", p}, {"terms", terms}};
}

inline Json fk_to_json(const FKResult& r) {
    return {{"braid", r.braid},
            {"datum", r.datum},
            {"sign_rule", sign_rule_name(r.rule)},
            {"x_order", r.x_order},
            {"d", r.d},
            {"ell", r.ell},
            {"leading_is_monomial", r.leading_is_monomial},
            {"s", r.s},
            {"boundary_vectors", r.boundary_count},
            {"normalized", series_to_json(r.normalized)},
            {"unnormalized", series_to_json(r.unnormalized)}};
}

inline Json mmr_to_json(const MMRData& m) {
    Json layers = Json::array();
    for (std::size_t j = 0; j < m.numerators.size(); ++j)
        layers.push_back({{"j", j}, {"verified", static_cast<bool>(m.verified[j])}, {"P", cyc_laurent_to_json(m.numerators[j], m.p)}});
    Json delta = Json::array();
    m.delta.poly.for_each([&](int e, const Int& c) { delta.push_back({{"x", e}, {"c", c.str()}}); });
    return {{"p", m.p}, {"source", m.source == MMRSource::FromFK ? "fk" : "habiro"}, {"alexander", delta}, {"layers", layers}};
}

inline Json radial_to_json(const std::vector<RadialEstimate>& v) {
    Json out = Json::array();
    for (const auto& r : v)
        out.push_back({{"k", r.k},
                       {"value", r.value},
                       {"spread", r.spread},
                       {"divergent", r.divergent},
                       {"sufficient", r.sufficient},
                       {"epsilons", r.epsilons},
                       {"samples", r.samples}});
    return out;
}

inline Json fit_to_json(const QuasiPolyFit& f) {
    auto rv = [](const std::vector<Rational>& v) {
        Json a = Json::array();
        for (const auto& x : v) a.push_back(to_string(x));
        return a;
    };
    Json j = {{"found", f.found}, {"reason", f.reason}, {"start", f.start}, {"period", f.period}, {"onset", f.onset}};
    if (!f.found) return j;
    j["a"] = to_string(f.a);
    j["a_constant"] = f.a_constant;
    j["a_residues"] = rv(f.a_residues);
    j["b"] = rv(f.b);
    j["c"] = rv(f.c);
    j["present"] = f.present;
    j["slope"] = f.slope ? Json(to_string(*f.slope)) : Json(nullptr);
    j["gf_numerator"] = rv(f.gf_numerator);
    j["gf_denominator"] = rv(f.gf_denominator);
    return j;
}

inline Json stratified_to_json(const StratifiedResult& r) {
    auto coeffs = [](const std::vector<StratifiedCoefficient>& v) {
        Json a = Json::array();
        for (const auto& c : v) {
            Json e = {{"index", c.index}, {"x2", c.x2}, {"status", convergence_name(c.status)}, {"stable_weight", c.stable_weight},
                      {"value", trunc_to_json(c.value)}};
            if (c.even) e["even"] = trunc_to_json(*c.even);
            if (c.odd) e["odd"] = trunc_to_json(*c.odd);
            a.push_back(e);
        }
        return a;
    };
    return {{"genus", r.genus}, {"s", r.s}, {"max_weight", r.max_weight}, {"unnormalized", coeffs(r.unnormalized)}, {"normalized", coeffs(r.normalized)}};
}

}  // namespace fk
