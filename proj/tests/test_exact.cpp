#include "trackcert/numberfield.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trackcert;

namespace {

FixedDecimal dec(const char* s) { return FixedDecimal::parse(s); }

// exact rational value of f at x, truncated toward zero at scale s
FixedDecimal exact_at(const IntPolynomial& f, const Rational& x, unsigned s)
{
    Rational r = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) r = r * x + Rational(*it);
    BigInt m = tdiv(r.get_num() * pow10(s), r.get_den());
    return {m, s};
}

} // namespace

TEST(Decimal, ParsePrintRoundTrip)
{
    for (const char* s : {"0.6180", "-12.000100", "3", "0.0000000000000000000000001", "-0.5"})
        EXPECT_EQ(dec(s).str(), s);
    EXPECT_EQ(dec("0.6180").scale(), 4u);
    EXPECT_THROW(dec("1.2.3"), std::invalid_argument);
    EXPECT_THROW(dec(""), std::invalid_argument);
    EXPECT_THROW(dec("1e5"), std::invalid_argument);
}

TEST(Decimal, TruncatedCompare)
{
    EXPECT_EQ(cmp_truncated(dec("0.1234999"), dec("0.1234000"), 4), Ord::EQ);
    EXPECT_EQ(cmp_truncated(dec("0.12351"), dec("0.12349"), 4), Ord::GT);
    EXPECT_EQ(cmp_truncated(dec("0.12349"), dec("0.12351"), 4), Ord::LT);
    auto x = dec("7.0000031");
    for (unsigned p = 0; p <= 7; ++p) EXPECT_EQ(cmp_truncated(x, x, p), Ord::EQ);
    EXPECT_THROW(cmp_truncated(dec("0.1"), dec("0.10"), 1), std::invalid_argument);
    EXPECT_THROW(cmp_truncated(dec("0.1"), dec("0.2"), 2), std::invalid_argument);
}

TEST(Decimal, TruncationMonotone)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-100000, 100000);
    for (int i = 0; i < 2000; ++i) {
        FixedDecimal a(d(rng), 5), b(d(rng), 5);
        if (b.mantissa() < a.mantissa()) std::swap(a, b);
        for (unsigned p = 0; p <= 5; ++p) EXPECT_NE(cmp_truncated(a, b, p), Ord::GT);
    }
}

TEST(Decimal, PlacesCompareUsesDifference)
{
    EXPECT_EQ(cmp_places(dec("0.0999999"), dec("0.1000000"), 4), Ord::EQ);
    EXPECT_EQ(cmp_places(dec("0.1001000"), dec("0.1000000"), 4), Ord::GT);
    EXPECT_EQ(cmp_places(dec("0.1000000"), dec("0.1001000"), 4), Ord::LT);
    EXPECT_EQ(sign_places(dec("-0.00001"), 4), 0);
    EXPECT_EQ(sign_places(dec("-0.00010"), 4), -1);
}

TEST(Decimal, ArithmeticTruncates)
{
    auto third = dec("1.000000") / dec("3.000000");
    EXPECT_EQ(third.str(), "0.333333");
    EXPECT_EQ((third * dec("3.000000")).str(), "0.999999");
    EXPECT_EQ((dec("-1.000000") / dec("3.000000")).str(), "-0.333333");
    EXPECT_EQ(FixedDecimal::from_rational(Rational(2, 3), 4).str(), "0.6666");
    EXPECT_EQ(dec("1.239").rescale(2).str(), "1.23");
    EXPECT_EQ(dec("1.2").rescale(4).str(), "1.2000");
}

TEST(Height, Basics)
{
    IntPolynomial f{1, -3, 1};
    EXPECT_NEAR(poly_height(f), std::log10(3.0), 1e-12);
    EXPECT_TRUE(height_at_most(f, 1));
    EXPECT_FALSE(height_at_most(IntPolynomial{11}, 1));
    EXPECT_TRUE(height_at_most(IntPolynomial{10}, 1));
    EXPECT_EQ(height_ceil(IntPolynomial{10}), 1u);
    EXPECT_EQ(height_ceil(IntPolynomial{11}), 2u);
    EXPECT_EQ(height_ceil(IntPolynomial{1}), 0u);
    EXPECT_THROW(poly_height(IntPolynomial{}), std::domain_error);
}

TEST(ZeroTest, Examples)
{
    EXPECT_TRUE(zero_test(FixedDecimal(0, 30), {2, 0.5}));
    EXPECT_FALSE(zero_test(dec("1.000000000000"), {2, 0.5}));
    EXPECT_THROW(zero_test(FixedDecimal(0, 1), {2, 0.5}), std::domain_error);
    // sqrt2 - c with c = 1.41421356 is a root of 10^16 y^2 + 2c 10^16 y + 10^16 (c^2 - 2): degree 2, height 16
    Rational c = Rational(141421356, 100000000);
    IntPolynomial root2{-2, 0, 1};
    auto iso = poly::refine_root(root2, {Rational(1), Rational(2)}, Rational(1, BigInt(pow10(60))));
    FixedDecimal a = FixedDecimal::from_rational(iso.lo - c, 60);
    EXPECT_GE(Rational(a.mantissa(), pow10(60)), Rational(1, BigInt(pow10(9))));
    EXPECT_FALSE(zero_test(a, {2, 16.0}));
}

TEST(ZeroTest, SeparationOnRandomRoots)
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> c(-100, 100), dg(1, 4);
    int roots = 0;
    for (int n = 0; n < 200; ++n) {
        std::vector<BigInt> co(dg(rng) + 1);
        for (auto& x : co) x = c(rng);
        if (co.back() == 0) co.back() = 1;
        IntPolynomial f = poly::squarefree_part(IntPolynomial(co));
        if (f.degree() < 1) continue;
        double h = poly_height(f);
        for (auto r : poly::isolate_real_roots(f)) {
            auto fine = poly::refine_root(f, r, Rational(1, BigInt(pow10(40))));
            if (fine.lo <= 0 && fine.hi >= 0) continue; // the root 0 itself
            ++roots;
            Rational x = fine.lo > 0 ? fine.lo : -fine.hi;
            double bound = h + std::log10(double(f.degree()));
            EXPECT_GT(x, Rational(1, BigInt(pow10(unsigned(std::ceil(bound))))));
            EXPECT_FALSE(zero_test(FixedDecimal::from_rational(x, 40), {unsigned(f.degree()), h}));
        }
    }
    EXPECT_GT(roots, 100);
}

TEST(Horner, AgreesWithExactEvaluation)
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> c(-50, 50), len(1, 8), num(-999, 999);
    for (int n = 0; n < 300; ++n) {
        std::vector<BigInt> co(len(rng));
        for (auto& x : co) x = c(rng);
        IntPolynomial f(co);
        Rational x(num(rng), 997);
        x.canonicalize();
        FixedDecimal xd = FixedDecimal::from_rational(x, 50);
        FixedDecimal h = horner_eval(f, xd);
        // both to 40 places; error of x itself is < 10^-50 times a modest derivative
        FixedDecimal ex = exact_at(f, xd.to_rational(), 50);
        BigInt diff = abs(h.mantissa() - ex.mantissa());
        EXPECT_LT(diff, pow10(10)) << f.str() << " at " << x.get_str();
    }
}

TEST(Horner, SignAtDecimalIsExact)
{
    IntPolynomial f{-2, 0, 1};
    EXPECT_EQ(sign_at_decimal(f, BigInt(141421356), 8), -1);
    EXPECT_EQ(sign_at_decimal(f, BigInt(141421357), 8), 1);
    EXPECT_EQ(sign_at_rational(f, Rational(3, 2)), 1);
    EXPECT_EQ(sign_at_rational(IntPolynomial{-1, 2}, Rational(1, 2)), 0);
}

TEST(EigenBounds, Substitution)
{
    auto b = eigen_height_bounds(1, 0, 0);
    EXPECT_DOUBLE_EQ(b.det_bound, 0);
    EXPECT_DOUBLE_EQ(b.eigvec_bound, 0);
    EXPECT_DOUBLE_EQ(b.eigval_bound, 2);
    auto l2 = std::log10(2.0);
    b = eigen_height_bounds(2, 1, 0);
    EXPECT_NEAR(b.det_bound, 4 * (1 + l2), 1e-12);
    EXPECT_NEAR(b.eigvec_bound, 8 * (1 + l2), 1e-12);
    EXPECT_NEAR(b.eigval_bound, 2 + 2 * l2 + 4, 1e-12);
    EXPECT_THROW(eigen_height_bounds(0, 1, 0), std::invalid_argument);
    for (unsigned z = 3; z <= 15; ++z)
        for (unsigned l = 1; l <= 64; ++l)
            EXPECT_LE(eigen_height_bounds(z, l, 0).eigvec_bound, double(z) * z * z * z * (l + 6)) << z << " " << l;
}

TEST(Poly, GcdResultantCharpoly)
{
    using namespace poly;
    QPoly a = mul(from_int({-1, 1}), from_int({-2, 1})), b = mul(from_int({-1, 1}), from_int({3, 1}));
    EXPECT_EQ(primitive(gcd(a, b)), (IntPolynomial{-1, 1}));
    EXPECT_EQ(resultant({-2, 0, 1}, {-3, 1}), BigInt(7));   // 3^2 - 2
    EXPECT_EQ(resultant({1, 1}, {1, 1}), BigInt(0));
    IntMatrix m = {{2, 1}, {1, 1}};
    EXPECT_EQ(charpoly(m), (IntPolynomial{1, -3, 1}));
    EXPECT_EQ(bareiss_det({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}}), BigInt(18));
    EXPECT_EQ(squarefree_part({1, -2, 1}), (IntPolynomial{-1, 1}));
    auto roots = isolate_real_roots({-2, 0, 1});
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_LE(roots[0].hi, 0);
    EXPECT_GE(roots[1].lo, 0);
    EXPECT_LT(roots[0].lo, roots[1].hi);
}

TEST(NumberField, GoldenRatioSquared)
{
    IntPolynomial f{1, -3, 1};
    auto r = poly::isolate_real_roots(f).back();
    auto K = NumberField::of_root(f, r);
    EXPECT_EQ(K->degree(), 2);
    EXPECT_TRUE(K->proven_minimal());
    NFElem l = NFElem::generator(K);
    EXPECT_EQ(l.decimal(20), "2.61803398874989484820");
    EXPECT_EQ((l * l - 3 * l + 1).sign(), 0);
    EXPECT_EQ((l - NFElem(Rational(26180339887, 10000000000))).sign(), 1);
    EXPECT_EQ((NFElem(1) / l + l).decimal(10), "3.0000000000");
}

TEST(NumberField, FindsMinimalFactor)
{
    IntPolynomial f{-2, 0, -1, 0, 1}; // (x^2 - 2)(x^2 + 1)
    auto r = poly::isolate_real_roots(f).back();
    auto K = NumberField::of_root(f, r);
    EXPECT_EQ(K->minpoly(), (IntPolynomial{-2, 0, 1}));
    EXPECT_EQ(NFElem::generator(K).decimal(12), "1.414213562373");
}
