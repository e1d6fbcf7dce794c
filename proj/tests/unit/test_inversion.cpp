#include "fk/inversion/datum.hpp"
#include "fk/inversion/lp.hpp"
#include "fk/inversion/niceness.hpp"
#include "fk/inversion/search.hpp"
#include "fk/statesum/inverted.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <set>

using namespace fk;

namespace {

BraidWord random_braid(std::mt19937& rng, int max_len) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int len = 1 + static_cast<int>(rng() % max_len);
    std::vector<Letter> w;
    for (int k = 0; k < len; ++k) w.push_back({1 + static_cast<int>(rng() % (n - 1)), rng() % 2 ? 1 : -1});
    return BraidWord(n, w);
}

}  // namespace

TEST(LP, OptimumOfSmallProgram) {
    // min x + y s.t. x + 2y >= 4, 3x + y >= 6, x, y >= 0: optimum 14/5 at (8/5, 6/5)
    LinearProgram lp(2);
    lp.lower = {Rational(0), Rational(0)};
    lp.objective = {Rational(1), Rational(1)};
    lp.add_row({{0, 1}, {1, 2}}, Sense::GE, 4);
    lp.add_row({{0, 3}, {1, 1}}, Sense::GE, 6);
    LPResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, Rational(14, 5));
    EXPECT_EQ(r.x[0], Rational(8, 5));
    EXPECT_EQ(r.x[1], Rational(6, 5));
    // dual feasibility: duals of >= rows are nonnegative and reproduce the objective
    EXPECT_GE(r.duals[0], 0);
    EXPECT_GE(r.duals[1], 0);
    EXPECT_EQ(r.duals[0] * 4 + r.duals[1] * 6, r.value);
}

TEST(LP, DetectsInfeasibleAndUnbounded) {
    LinearProgram inf(1);
    inf.add_row({{0, 1}}, Sense::GE, 2);
    inf.add_row({{0, 1}}, Sense::LE, 1);
    EXPECT_EQ(solve_lp(inf).status, LPStatus::Infeasible);

    LinearProgram unb(2);
    unb.lower = {Rational(0), Rational(0)};
    unb.objective = {Rational(-1), Rational(0)};
    unb.add_row({{0, 1}, {1, -1}}, Sense::LE, 3);
    LPResult r = solve_lp(unb);
    ASSERT_EQ(r.status, LPStatus::Unbounded);
    // the ray keeps feasibility and lowers the objective
    ASSERT_EQ(r.ray.size(), 2u);
    EXPECT_LT(-r.ray[0], 0);
    EXPECT_LE(r.ray[0] - r.ray[1], 0);
    EXPECT_GE(r.ray[1], 0);
}

TEST(LP, EqualityRows) {
    LinearProgram lp(3);
    lp.lower = {Rational(0), Rational(0), Rational(0)};
    lp.objective = {Rational(2), Rational(3), Rational(1)};
    lp.add_row({{0, 1}, {1, 1}, {2, 1}}, Sense::EQ, 6);
    lp.add_row({{2, 1}}, Sense::LE, 2);
    LPResult r = solve_lp(lp);
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_EQ(r.value, Rational(10));  // z = 2, x = 4
}

TEST(Datum, EnumerationMatchesBruteForce) {
    std::mt19937 rng(17);
    for (int t = 0; t < 40; ++t) {
        const DiagramGraph g = diagram(random_braid(rng, 7));
        auto fast = enumerate_data(g);
        auto slow = enumerate_data_bruteforce(g);
        std::set<InversionDatum> a(fast.begin(), fast.end()), b(slow.begin(), slow.end());
        EXPECT_EQ(a, b);
        EXPECT_EQ(a.size(), fast.size()) << "duplicates in the enumeration";
        for (const auto& d : fast) EXPECT_TRUE(validate_datum(g, d));
    }
}

TEST(Datum, SingleCrossingHasThreeData) {
    // the count is not 2^length: one crossing already admits three labelings
    EXPECT_EQ(enumerate_data(diagram(parse_braid("1", 2))).size(), 3u);
    EXPECT_EQ(enumerate_data(diagram(parse_braid("1 1 1", 2))).size(), 6u);
}

TEST(Datum, StringRoundTrip) {
    const DiagramGraph g = diagram(parse_braid("1 -2 1 -2"));
    for (const auto& d : enumerate_data(g)) EXPECT_EQ(datum_from_string(g, datum_to_string(g, d)), d);
    EXPECT_THROW(datum_from_string(g, "++"), std::invalid_argument);
}

TEST(Datum, HomogeneousEll) {
    // w/2 - sum eps_i / 2
    EXPECT_EQ(ell_homogeneous(parse_braid("1 1 1")), 1);
    EXPECT_EQ(ell_homogeneous(parse_braid("-1 -1 -1")), -1);
    EXPECT_EQ(ell_homogeneous(parse_braid("1 -2 1 -2")), 0);
    EXPECT_EQ(ell_homogeneous(parse_braid("1 1 1 1 1")), 2);
    EXPECT_THROW(ell_homogeneous(parse_braid("1 -1 2")), std::invalid_argument);
}

TEST(Datum, NaturalDatumOfHomogeneousBraidIsNice) {
    for (const char* w : {"1 1 1", "-1 -1 -1", "1 -2 1 -2", "-1 2 -1 2 2 2", "1 1 -2 1 3 -2 3"}) {
        const BraidWord b = parse_braid(w);
        const DiagramGraph g = diagram(b);
        bool any = false;
        for (int left : {1, -1}) {
            const InversionDatum d = natural_datum(g, left);
            if (!validate_datum(g, d)) continue;
            const auto cert = niceness_check(g, d);
            if (!cert.nice) continue;
            any = true;
            EXPECT_EQ(ell(g, d), ell_homogeneous(b)) << w;
        }
        EXPECT_TRUE(any) << w;
    }
}

TEST(Datum, MirrorNegatesEll) {
    const BraidWord b = parse_braid("1 1 -2 1 3 -2 3");
    const DiagramGraph g = diagram(b), gm = diagram(mirror(b));
    for (const auto& [d, cert] : nice_data(b)) {
        EXPECT_EQ(ell_rational(gm, mirror_datum(d)), -ell_rational(g, d));
        EXPECT_TRUE(niceness_check(gm, mirror_datum(d)).nice);
    }
}

TEST(Niceness, CertificateIdentityOnStates) {
    // degree = beta + sum alpha |a| + sum gamma (support terms) on every conserving state
    const BraidWord b = parse_braid("1 -2 1 -2");
    const DiagramGraph g = diagram(b);
    const InversionDatum d = datum_from_string(g, "++-+++-+");
    const auto cert = niceness_check(g, d);
    ASSERT_TRUE(cert.nice);
    for (const auto& a : cert.alpha) EXPECT_GE(a, 0);
    for (const auto& c : cert.gamma) EXPECT_GE(c, 0);
    int checked = 0;
    enumerate_states(g, d, 12, [&](const State& s) {
        EXPECT_EQ(certificate_value(g, d, cert, s.values), degree_functional(g, s.values));
        EXPECT_GE(degree_functional(g, s.values), cert.min_degree);
        ++checked;
    });
    EXPECT_GT(checked, 5);
}

TEST(Niceness, GroundStateIsTheUniqueMinimizer) {
    const BraidWord b = parse_braid("1 1 1");
    const DiagramGraph g = diagram(b);
    const InversionDatum d = uniform_datum(g, 1);
    const auto cert = niceness_check(g, d);
    ASSERT_TRUE(cert.nice);
    const State s0 = ground_state(g, d);
    EXPECT_EQ(degree_functional(g, s0.values), cert.min_degree);
    EXPECT_EQ(cert.min_degree, Rational(ell(g, d)));
    int at_min = 0;
    enumerate_states(g, d, 2 * 3, [&](const State& s) {
        if (degree_functional(g, s.values) == cert.min_degree) {
            ++at_min;
            EXPECT_EQ(s.values, s0.values);
        }
    });
    EXPECT_EQ(at_min, 1);
}

TEST(Niceness, NonNiceDatumHasRay) {
    // every datum of sigma_1 sigma_1 sigma_1 sigma_2 sigma_3 sigma_3 sigma_3^{-1} fails
    const BraidWord beta = unknot_gadget_sum(parse_braid("1 1 1"));
    EXPECT_EQ(format_braid(beta), "1 1 1 2 3 3 -3");
    const DiagramGraph g = diagram(beta);
    auto all = enumerate_data(g);
    EXPECT_EQ(all.size(), 22u);
    for (const auto& d : all) {
        const auto cert = niceness_check(g, d);
        EXPECT_FALSE(cert.nice);
        if (!cert.coercive) EXPECT_FALSE(cert.ray.empty());
    }
    EXPECT_TRUE(nice_data(beta).empty());
}

TEST(Niceness, NotNiceSumThrows) {
    const BraidWord beta = unknot_gadget_sum(parse_braid("1 1 1"));
    const DiagramGraph g = diagram(beta);
    EXPECT_THROW(inverted_sum(g, enumerate_data(g).front(), 2), NotNiceError);
}

TEST(Search, ReturnsImmediatelyWhenTheInputIsNice) {
    SearchOutcome o = search_datum(parse_braid("1 1 1"));
    ASSERT_TRUE(o.result.has_value());
    EXPECT_EQ(o.result->word_index, 0);
    EXPECT_EQ(o.stats.words_tried, 1);
    EXPECT_TRUE(o.result->certificate.nice);
}

TEST(Search, FreeReductionRecoversNiceness) {
    // the gadget word free-reduces to a word of the trefoil plus a trivial stabilization
    SearchBudget budget;
    budget.walk.iterations = 200;
    SearchOutcome o = search_datum(unknot_gadget_sum(parse_braid("1 1 1")), budget);
    ASSERT_TRUE(o.result.has_value());
    const DiagramGraph g = diagram(o.result->braid);
    EXPECT_TRUE(niceness_check(g, o.result->datum).nice);
}

TEST(Search, BudgetExhaustionIsReported) {
    SearchBudget budget;
    budget.walk.iterations = 0;
    budget.max_words = 1;
    // 5_2 as a negative word has no nice datum on this presentation
    SearchOutcome o = search_datum(parse_braid("-1 -1 2 -1 -2 -2"), budget);
    EXPECT_FALSE(o.result.has_value());
    EXPECT_EQ(o.stats.words_tried, 1);
}
