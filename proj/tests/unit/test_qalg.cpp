#include "fk/qalg/cyclotomic.hpp"
#include "fk/qalg/polydiv.hpp"
#include "fk/qalg/qcomb.hpp"
#include "fk/qalg/qseries.hpp"
#include "fk/qalg/xseries.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

using namespace fk;

namespace {

HalfLaurent random_laurent(std::mt19937& rng, int span = 8) {
    std::uniform_int_distribution<int> e(-span, span), c(-5, 5), n(0, 6);
    HalfLaurent p;
    for (int k = n(rng); k > 0; --k) p += HalfLaurent(e(rng), Int(c(rng)));
    return p;
}

Int coefficient_sum(const HalfLaurent& p) {
    Int s = 0;
    p.for_each([&](int, const Int& v) { s += v; });
    return s;
}

std::complex<double> evaluate(const CycElem& z) {
    const double pi = std::acos(-1.0);
    const std::complex<double> zeta = std::polar(1.0, 2 * pi / z.p());
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < z.coeffs().size(); ++k) s += z.coeffs()[k].convert_to<double>() * std::pow(zeta, static_cast<double>(k));
    return s;
}

}  // namespace

TEST(Laurent, RingAxiomsOnRandomElements) {
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
        const HalfLaurent a = random_laurent(rng), b = random_laurent(rng), c = random_laurent(rng);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a + b - b, a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * HalfLaurent::constant(1), a);
    }
}

TEST(Laurent, ShiftAndReflect) {
    const HalfLaurent p = qpow(-2, 3) + qpow(1) - qpow2(5, 2);
    EXPECT_EQ(p.shifted(4), qpow(0, 3) + qpow(3) - qpow2(9, 2));
    EXPECT_EQ(p.reflected().reflected(), p);
    EXPECT_EQ(p.reflected().coeff(4), Int(3));
    EXPECT_EQ(p.min_exp(), -4);
    EXPECT_EQ(p.max_exp(), 5);
}

TEST(Laurent, PrettyUsesHalfExponents) {
    EXPECT_EQ(pretty(qpow(-1) + qpow(0, 3) + qpow(1), "q", true), "q^(-1) + 3 + q");
    EXPECT_EQ(pretty(HalfLaurent(), "q", true), "0");
}

TEST(QComb, QuantumIntegerTimesBrace) {
    const HalfLaurent brace1 = qpow2(1) - qpow2(-1);
    for (int n = 0; n < 12; ++n) EXPECT_EQ(quantum_int(n) * brace1, qpow2(n) - qpow2(-n)) << n;
}

TEST(QComb, GaussianBinomialAtOneIsBinomial) {
    for (int n = 0; n < 12; ++n)
        for (int k = 0; k <= n; ++k) {
            EXPECT_EQ(coefficient_sum(gaussian_binomial(n, k)), binomial(n, k));
            EXPECT_EQ(coefficient_sum(qbinom_sym(n, k)), binomial(n, k));
        }
}

TEST(QComb, SymmetricBinomialIsPalindromic) {
    for (int n = 0; n < 10; ++n)
        for (int k = 0; k <= n; ++k) EXPECT_EQ(qbinom_sym(n, k).reflected(), qbinom_sym(n, k));
}

TEST(QComb, QuantumPascalRule) {
    // [n k] = q^{k/2} [n-1 k] + q^{-(n-k)/2} [n-1 k-1] for the symmetric version
    for (int n = 1; n < 10; ++n)
        for (int k = 1; k < n; ++k)
            EXPECT_EQ(qbinom_sym(n, k), qbinom_sym(n - 1, k).shifted(-k) + qbinom_sym(n - 1, k - 1).shifted(n - k));
}

TEST(QComb, PochhammerMultiplyThenDivide) {
    FSeries s(20);
    s.add(0, qpow(0));
    s.add(2, qpow(1, 2));
    const FSeries m = poch_multiply(s, {4, 2}, 1, 3);
    const FSeries back = poch_divide(m, {4, 2}, 1, 3);
    EXPECT_EQ(back, s);
}

TEST(QComb, GeometricSeriesFromDivision) {
    FSeries one = FSeries::one(12);
    FSeries g = poch_divide(one, {2, 2}, 1, 1);  // 1 / (1 - q x)
    for (int k = 0; k < 6; ++k) EXPECT_EQ(g.coeff(2 * k), qpow(k)) << k;
}

TEST(QComb, ExpandAtOneMatchesBinomialSeries) {
    // q^k = (1 + h)^k
    for (int k = -4; k <= 4; ++k) {
        auto c = expand_at_one(qpow(k), 5);
        for (int m = 0; m <= 5; ++m) EXPECT_EQ(c[m], Rational(gen_binomial(k, m))) << k << " " << m;
    }
    EXPECT_THROW(expand_at_one(qpow2(1), 2), std::domain_error);
}

TEST(QComb, ExpandAtRootLeadingTermIsZetaPower) {
    for (int p : {2, 3, 4, 5, 6}) {
        for (int k = -3; k <= 7; ++k) {
            auto c = expand_at_root(qpow(k), p, 1);
            EXPECT_EQ(c[0], CycElem::zeta_pow(p, k));
            // d/dq q^k = k q^{k-1}
            CycElem d = CycElem::zeta_pow(p, k - 1);
            d *= Rational(k);
            EXPECT_EQ(c[1], d);
        }
    }
    auto one = expand_at_root(qpow(3) - qpow(1), 1, 2);
    auto ref = expand_at_one(qpow(3) - qpow(1), 2);
    for (int m = 0; m <= 2; ++m) EXPECT_EQ(one[m].coeffs()[0], ref[m]);
}

TEST(QSeries, InverseOfOneMinusQ) {
    QSeriesTrunc s(HalfLaurent::constant(1) - qpow(1), 40);
    QSeriesTrunc inv = s.inverse();
    for (int k = 0; k < 20; ++k) EXPECT_EQ(inv.coeff(2 * k), Int(1));
    EXPECT_TRUE((s * inv).agrees_with(QSeriesTrunc(HalfLaurent::constant(1), 40)));
}

TEST(QSeries, ProductTracksOrder) {
    QSeriesTrunc a(qpow(1) + qpow(3), 10), b(qpow(0) - qpow(2), 8);
    QSeriesTrunc c = a * b;
    EXPECT_EQ(c.order(), std::min(10 + 0, 8 + 2));
    EXPECT_THROW(c.coeff(c.order()), std::out_of_range);
}

TEST(XSeries, TruncatedProduct) {
    // (1 - x) * sum x^k = 1 below the order
    FSeries a(10), b(10);
    a.add(0, qpow(0));
    a.add(2, -qpow(0));
    for (int k = 0; k < 5; ++k) b.add(2 * k, qpow(0));
    FSeries c = a * b;
    EXPECT_EQ(c.terms().size(), 1u);
    EXPECT_EQ(c.coeff(0), qpow(0));
}

TEST(XSeries, SubstituteQInverseIsInvolution) {
    FSeries s(9);
    s.add(1, qpow(-1) + qpow(2, 3));
    s.add(5, qpow2(3));
    EXPECT_EQ(substitute_q_inverse(substitute_q_inverse(s)), s);
    EXPECT_EQ(substitute_q_inverse(s).coeff(1), qpow(1) + qpow(-2, 3));
}

TEST(Cyclotomic, PolynomialsHaveEulerPhiDegree) {
    auto phi = [](int n) {
        int r = 0;
        for (int k = 1; k <= n; ++k) r += std::gcd(k, n) == 1;
        return r;
    };
    for (int p = 1; p <= 12; ++p) EXPECT_EQ(CycElem::degree_of(p), phi(p)) << p;
}

TEST(Cyclotomic, PowerSumVanishesAndZetaHasOrderP) {
    for (int p = 2; p <= 9; ++p) {
        CycElem s(p);
        for (int k = 0; k < p; ++k) s += CycElem::zeta_pow(p, k);
        EXPECT_TRUE(s.is_zero()) << p;
        CycElem z = CycElem::zeta_pow(p, 1), acc(p, Rational(1));
        for (int k = 0; k < p; ++k) acc = acc * z;
        EXPECT_EQ(acc, CycElem(p, Rational(1)));
    }
}

TEST(Cyclotomic, ArithmeticAgreesWithComplexEvaluation) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> c(-4, 4);
    for (int p : {3, 4, 5, 7, 8}) {
        const int deg = CycElem::degree_of(p);
        for (int t = 0; t < 30; ++t) {
            std::vector<long> va(deg), vb(deg);
            for (auto& v : va) v = c(rng);
            for (auto& v : vb) v = c(rng);
            CycElem a = CycElem::from_basis(p, va), b = CycElem::from_basis(p, vb);
            EXPECT_LT(std::abs(evaluate(a * b) - evaluate(a) * evaluate(b)), 1e-9);
            EXPECT_LT(std::abs(evaluate(a + b) - evaluate(a) - evaluate(b)), 1e-9);
        }
    }
}

TEST(PolyDiv, ExactDivisionInvertsMultiplication) {
    std::mt19937 rng(11);
    for (int t = 0; t < 100; ++t) {
        HalfLaurent a = random_laurent(rng), b = random_laurent(rng);
        if (b.is_zero()) continue;
        EXPECT_EQ(exact_divide(a * b, b), a);
    }
    EXPECT_THROW(exact_divide(qpow(0) + qpow(1, 1), qpow(0, 2)), DivisionError);
}

TEST(PolyDiv, BareissMatchesPermutationExpansion) {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int n = 1; n <= 4; ++n)
        for (int t = 0; t < 10; ++t) {
            std::vector<std::vector<IntLaurent>> m(n, std::vector<IntLaurent>(n));
            std::vector<std::vector<int>> v(n, std::vector<int>(n));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    v[i][j] = c(rng);
                    m[i][j] = IntLaurent::constant(v[i][j]);
                }
            std::vector<int> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            long det = 0;
            do {
                long prod = 1;
                int inv = 0;
                for (int i = 0; i < n; ++i) {
                    prod *= v[i][perm[i]];
                    for (int j = i + 1; j < n; ++j) inv += perm[i] > perm[j];
                }
                det += inv % 2 ? -prod : prod;
            } while (std::next_permutation(perm.begin(), perm.end()));
            EXPECT_EQ(bareiss_determinant(m), IntLaurent::constant(det));
        }
}

TEST(Numeric, CheckedThrowsOnOverflow) {
    Checked a(INT64_MAX / 2 + 1);
    EXPECT_THROW(a * Checked(2), OverflowError);
    EXPECT_THROW(Checked(INT64_MAX) + Checked(1), OverflowError);
    EXPECT_EQ((Checked(6) * Checked(7)).v, 42);
}

TEST(Numeric, BinomialsAndRationals) {
    EXPECT_EQ(binomial(10, 3), Int(120));
    EXPECT_EQ(gen_binomial(-2, 3), Int(-4));
    EXPECT_EQ(floor_div(Int(-7), Int(2)), Int(-4));
    EXPECT_EQ(floor_rational(Rational(-7, 2)), Int(-4));
    EXPECT_EQ(ceil_rational(Rational(7, 2)), Int(4));
    EXPECT_EQ(parse_rational("-37/2"), Rational(-37, 2));
    EXPECT_EQ(to_string(Rational(16)), "16");
    EXPECT_EQ(to_string(Rational(-5, 8)), "-5/8");
}
