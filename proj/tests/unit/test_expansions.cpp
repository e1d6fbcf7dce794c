#include "fk/expansions/mmr.hpp"
#include "fk/expansions/radial.hpp"

#include <gtest/gtest.h>

using namespace fk;

namespace {

FKResult fk_of(const char* word, const char* datum, int N) {
    const DiagramGraph g = diagram(parse_braid(word));
    return inverted_sum(g, datum_from_string(g, datum), N);
}

CycLaurent rational_laurent(std::initializer_list<std::pair<int, int>> terms) {
    CycLaurent r;
    for (auto [e, c] : terms) r.emplace(e, CycElem(1, Rational(c)));
    return r;
}

}  // namespace

TEST(MMR, LeadingLayerIsOne) {
    for (auto [w, d] : {std::pair{"1 1 1", "++++++"}, std::pair{"1 -2 1 -2", "++-+++-+"}}) {
        const MMRData m = mmr_from_fk(fk_of(w, d, 8), 1, alexander(parse_braid(w)));
        ASSERT_EQ(m.numerators.size(), 2u);
        EXPECT_EQ(m.numerators[0], rational_laurent({{0, 1}})) << w;
        EXPECT_TRUE(m.verified[0]);
        EXPECT_TRUE(m.verified[1]);
    }
}

TEST(MMR, FirstLayerAgreesWithHabiroRoute) {
    for (auto [w, d] : {std::pair{"1 1 1", "++++++"}, std::pair{"-1 -1 -1", "------"}, std::pair{"1 -2 1 -2", "++-+++-+"},
                        std::pair{"1 1 1 1 1", "++++++++++"}}) {
        const BraidWord b = parse_braid(w);
        const AlexanderPoly delta = alexander(b);
        const MMRData a = mmr_from_fk(fk_of(w, d, 14), 1, delta);
        const MMRData h = mmr_from_habiro(habiro_coefficients(jones_table(b, 2 * delta.d() + 2), 2 * delta.d() + 2), delta);
        EXPECT_EQ(a.numerators[1], h.numerators[1]) << w << ": " << pretty_cyc(a.numerators[1]) << " vs " << pretty_cyc(h.numerators[1]);
        // x <-> 1/x symmetry
        for (const auto& [e, c] : a.numerators[1]) EXPECT_EQ(detail::cyc_coeff(a.numerators[1], -e, 1), c);
    }
}

TEST(MMR, FigureEightFirstLayerVanishes) {
    const BraidWord b = parse_braid("1 -2 1 -2");
    const MMRData h = mmr_from_habiro(habiro_coefficients(jones_table(b, 4), 4), alexander(b));
    EXPECT_TRUE(h.numerators[1].empty());
}

TEST(MMR, FiveTwoFirstLayerInY) {
    // P^(1) = 6y + 5y^2 for the quasipositive chirality
    const BraidWord b = parse_braid("1 1 -2 1 2 2");
    const AlexanderPoly delta = alexander(b);
    const auto py = p1_in_y(habiro_coefficients(jones_table(b, 4), 4), delta);
    EXPECT_EQ(py, (std::vector<Int>{0, 6, 5}));
    const auto dy = delta.in_y();
    EXPECT_EQ(std::vector<Int>(dy.begin(), dy.end()), (std::vector<Int>{1, 2}));
}

TEST(MMR, RootOfUnityOneMatchesQEqualsOne) {
    const FKResult F = fk_of("1 1 1", "++++++", 10);
    const AlexanderPoly delta = alexander(parse_braid("1 1 1"));
    const MMRData a = mmr_from_fk(F, 1, delta), b = mmr_at_root(F, 1, 1, delta);
    EXPECT_EQ(a.numerators, b.numerators);
    EXPECT_THROW(mmr_at_root(F, 0, 1, delta), std::invalid_argument);
}

TEST(MMR, LayerZeroAtRootsIsACyclotomicNumber) {
    // every coefficient of P^(0) at zeta_p lies in Q(zeta_p) and the numerator is x <-> 1/x symmetric
    const FKResult F = fk_of("1 1 1", "++++++", 26);
    const AlexanderPoly delta = alexander(parse_braid("1 1 1"));
    for (int p = 2; p <= 4; ++p) {
        const MMRData m = mmr_at_root(F, p, 0, delta);
        ASSERT_FALSE(m.numerators[0].empty());
        for (const auto& [e, c] : m.numerators[0]) {
            EXPECT_EQ(c.p(), p);
            EXPECT_EQ(detail::cyc_coeff(m.numerators[0], -e, p), c);
        }
    }
}

TEST(MMR, WindowTooSmallReportsRequiredOrder) {
    const FKResult F = fk_of("1 1 1", "++++++", 2);
    try {
        mmr_from_fk(F, 1, alexander(parse_braid("1 1 1")));
        FAIL() << "expected MMRWindowError";
    } catch (const MMRWindowError& e) {
        EXPECT_EQ(e.required_x_order, 3);
    }
}

TEST(MMR, YToX) {
    // y = x - 2 + 1/x, y^2 = x^2 - 4x + 6 - 4/x + 1/x^2
    EXPECT_EQ(y_to_x({Int(0), Int(1)}), rational_laurent({{-1, 1}, {0, -2}, {1, 1}}));
    EXPECT_EQ(y_to_x({Int(0), Int(0), Int(1)}), rational_laurent({{-2, 1}, {-1, -4}, {0, 6}, {1, -4}, {2, 1}}));
    EXPECT_EQ(integral_part(y_to_x({Int(3)})), IntLaurent::constant(3));
}

TEST(MMR, PrettyPrinting) {
    EXPECT_EQ(pretty_cyc(rational_laurent({{-1, 1}, {0, -2}, {1, 1}})), "x^-1 - 2 + x");
    EXPECT_EQ(pretty_cyc(rational_laurent({{-1, 1}, {0, -2}, {1, 1}}), true), "-2 + x");
}

TEST(Radial, PolynomialLimitsAreValues) {
    // 1 + 2q - q^3: value 2, first derivative 2 - 3
    const QSeriesTrunc c(HalfLaurent::constant(1) + qpow(1, 2) - qpow(3), 20000);
    const auto r = radial_limits(c, 1);
    EXPECT_NEAR(r[0].value, 2.0, 1e-9);
    EXPECT_NEAR(r[1].value, -1.0, 1e-9);
    EXPECT_FALSE(r[0].divergent);
    EXPECT_TRUE(r[0].sufficient);
}

TEST(Radial, FalseThetaTendsToOneHalf) {
    HalfLaurent psi;
    for (int n = 0; n * (n + 1) / 2 < 3000; ++n) psi += qpow(n * (n + 1) / 2, Int(n % 2 ? -1 : 1));
    const auto r = radial_limits(QSeriesTrunc(psi, 6000), 0);
    EXPECT_TRUE(r[0].sufficient);
    EXPECT_NEAR(r[0].value, 0.5, 1e-4);
}

TEST(Radial, GeometricSeriesIsDivergent) {
    HalfLaurent g;
    for (int n = 0; n < 3000; ++n) g += qpow(n);
    const auto r = radial_limits(QSeriesTrunc(g, 6000), 0);
    EXPECT_TRUE(r[0].divergent);
}

TEST(Radial, ShortSeriesIsInsufficient) {
    HalfLaurent g;
    for (int n = 0; n < 10; ++n) g += qpow(n);
    EXPECT_FALSE(radial_limits(QSeriesTrunc(g, 20), 0)[0].sufficient);
}
