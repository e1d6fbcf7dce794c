#include "fk/slopes/quasipoly.hpp"
#include "fk/slopes/table.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

using namespace fk;

namespace {

std::vector<Rational> sequence(int from, int count, const std::function<Rational(int)>& f) {
    std::vector<Rational> v;
    for (int n = from; n < from + count; ++n) v.push_back(f(n));
    return v;
}

Rational floor_quarter_square(int n) { return Rational(floor_div(Int(n) * n, Int(4))); }

}  // namespace

TEST(Fit, PureQuadratic) {
    const auto v = sequence(0, 12, [](int n) { return Rational(n * n - 3 * n + 7); });
    const QuasiPolyFit f = fit(v);
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.period, 1);
    EXPECT_EQ(f.a, 1);
    EXPECT_EQ(f.slope, Rational(1));
    for (int n = 0; n < 30; ++n) EXPECT_EQ(f.value(n), Rational(n * n - 3 * n + 7));
}

TEST(Fit, QuarterSquaresHavePeriodTwo) {
    const auto v = sequence(3, 14, floor_quarter_square);
    const QuasiPolyFit f = fit(v, 3);
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.period, 2);
    EXPECT_EQ(f.a, Rational(1, 4));
    EXPECT_EQ(f.slope, Rational(4));
    for (int n = 3; n < 40; ++n) EXPECT_EQ(f.value(n), floor_quarter_square(n)) << n;
}

TEST(Fit, GeneratingFunctionReproducesTheSequence) {
    const auto f1 = [](int n) { return Rational(floor_div(Int(3) * n * n + n, Int(5))) - 2; };
    const auto v = sequence(2, 30, f1);
    const QuasiPolyFit f = fit(v, 2);
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.slope, Rational(5, 3));
    const auto e = expand_rational(f.gf_numerator, f.gf_denominator, 60);
    for (int k = 0; k < 60; ++k) EXPECT_EQ(e[k], f1(2 + k)) << k;
}

TEST(Fit, LateOnsetIsDetected) {
    // irregular first values, then 2n^2
    auto g = [](int n) { return n < 4 ? Rational(100 + n) : Rational(2 * n * n); };
    const QuasiPolyFit f = fit(sequence(0, 20, g));
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.slope, Rational(1, 2));
    EXPECT_LE(f.onset, 4);
    for (int n = 4; n < 30; ++n) EXPECT_EQ(f.value(n), g(n));
}

TEST(Fit, LinearSequenceHasNoSlope) {
    const QuasiPolyFit f = fit(sequence(0, 10, [](int n) { return Rational(3 * n + 1); }));
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.a, 0);
    EXPECT_FALSE(f.slope.has_value());
}

TEST(Fit, NoiseIsNotFitted) {
    std::mt19937 rng(42);
    std::vector<Rational> v;
    for (int k = 0; k < 16; ++k) v.push_back(Rational(static_cast<long>(rng() % 1000)));
    EXPECT_FALSE(fit(v).found);
}

TEST(Fit, GappedSequenceUsesResidueClasses) {
    // odd entries are zero coefficients, even entries follow n^2 / 2
    DegreeSequence s;
    s.first_index = 0;
    for (int n = 0; n < 24; ++n) {
        if (n % 2)
            s.values.emplace_back();
        else
            s.values.emplace_back(Rational(n * n, 2));
    }
    const QuasiPolyFit f = fit(s);
    ASSERT_TRUE(f.found) << f.reason;
    EXPECT_EQ(f.slope, Rational(2));
    for (int n = 0; n < 40; ++n) {
        if (n % 2)
            EXPECT_FALSE(f.value(n).has_value());
        else
            EXPECT_EQ(f.value(n), Rational(n * n, 2));
    }
}

TEST(Fit, StartIndexDropsLeadingEntries) {
    DegreeSequence s;
    s.first_index = 0;
    for (int n = 0; n < 20; ++n) s.values.emplace_back(n < 5 ? Rational(-n * n * n) : Rational(n * n));
    FitOptions opt;
    opt.start_index = 5;
    const QuasiPolyFit f = fit(s, opt);
    ASSERT_TRUE(f.found);
    EXPECT_EQ(f.start, 5);
    EXPECT_EQ(f.slope, Rational(1));
}

TEST(DegreeSequences, ReadsMinAndMaxPerCoefficient) {
    FSeries F(12);
    F.add(1, qpow(-1) + qpow(2));
    F.add(5, qpow2(3));
    F.add(7, qpow(0) - qpow(4));
    const DegreeSequences d = degree_sequences(F);
    EXPECT_EQ(d.min.first_index, 0);
    ASSERT_EQ(d.min.values.size(), 6u);
    EXPECT_EQ(d.min.values[0], Rational(-1));
    EXPECT_EQ(d.max.values[0], Rational(2));
    EXPECT_FALSE(d.min.values[1].has_value());
    EXPECT_EQ(d.min.values[2], Rational(3, 2));
    EXPECT_EQ(d.max.values[3], Rational(4));
    int start = -1;
    EXPECT_TRUE(d.min.tail(&start).empty());
    EXPECT_EQ(start, 6);
}

TEST(Table, TsvReferenceAndDiff) {
    FSeries F(40);
    for (int n = 0; n < 20; ++n) F.add(2 * n + 1, qpow(-n * n) + qpow(static_cast<int>(floor_div(Int(n) * n, Int(4)))));
    const auto rows = slope_table({{"demo", F}});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].slopes(), (std::set<Rational>{Rational(-1), Rational(4)}));
    const std::string tsv = slope_table_tsv(rows);
    EXPECT_NE(tsv.find("demo\t-1,4\t1\t"), std::string::npos) << tsv;

    std::istringstream ref("# comment\ndemo\t4,-1\nother\t1/2\n");
    const auto r = parse_slope_reference(ref);
    EXPECT_EQ(r.at("other"), (std::set<Rational>{Rational(1, 2)}));
    const auto diff = diff_slopes(rows, r);
    ASSERT_EQ(diff.size(), 1u);
    EXPECT_TRUE(diff[0].matches());

    std::istringstream bad("no tab here\n");
    EXPECT_THROW(parse_slope_reference(bad), std::invalid_argument);
}

TEST(Pretty, Polynomials) {
    EXPECT_EQ(pretty_poly({Rational(1), Rational(-2), Rational(0), Rational(1, 3)}), "1 - 2*t + 1/3*t^3");
    EXPECT_EQ(pretty_poly({}), "0");
}
