#include "trackcert/classify.hpp"

#include <gtest/gtest.h>

using namespace trackcert;

namespace {

NTType cls(const char* s, const char* w) { return nt_classify(word_to_path(s, w)); }

bool conj(const char* s, const char* u, const char* w) { return pa_conjugate(word_to_path(s, u), word_to_path(s, w)); }

} // namespace

TEST(Classify, OrderBound)
{
    EXPECT_EQ(order_bound(builtin_surface("S_1_1")), 10);
    EXPECT_EQ(order_bound(builtin_surface("S_0_5")), 18);
    EXPECT_EQ(order_bound(builtin_surface("S_2_1")), 18);
}

TEST(Classify, PeriodicWithMinimalOrder)
{
    struct Row { const char* s; const char* w; int order; } rows[] = {
        {"S_1_1", "", 1}, {"S_1_1", "aA", 1}, {"S_1_1", "ab", 6}, {"S_1_1", "aba", 4},
        {"S_1_1", "ababab", 2}, {"S_0_5", "abc", 4}, {"S_0_5", "abcd", 5}};
    for (auto& r : rows) {
        auto t = cls(r.s, r.w);
        EXPECT_EQ(t.kind, NTType::Periodic) << r.s << " " << r.w;
        EXPECT_EQ(t.order, r.order) << r.s << " " << r.w;
        auto p = word_to_path(r.s, r.w);
        for (int k = 1; k < r.order; ++k) EXPECT_FALSE(is_identity(path_power(p, k))) << r.w << "^" << k;
    }
}

TEST(Classify, PseudoAnosov)
{
    for (const char* w : {"aB", "aaB", "abAB"}) {
        auto t = cls("S_1_1", w);
        EXPECT_EQ(t.kind, NTType::PseudoAnosov) << w;
        ASSERT_TRUE(t.report) << w;
        EXPECT_TRUE(t.report->accepted);
        EXPECT_STREQ(to_string(t.kind), "pseudo-Anosov");
    }
    EXPECT_EQ(cls("S_0_5", "aBcD").kind, NTType::PseudoAnosov);
}

TEST(Classify, ReducibleIsInconclusive)
{
    for (auto [s, w] : {std::pair{"S_1_1", "a"}, {"S_0_5", "a"}, {"S_0_5", "ab"}}) {
        auto t = cls(s, w);
        EXPECT_EQ(t.kind, NTType::Inconclusive) << s << " " << w;
        EXPECT_TRUE(t.suspected_reducible) << s << " " << w;
        EXPECT_FALSE(t.evidence.empty());
    }
}

TEST(Conjugacy, InvariantAgreesOnConjugates)
{
    EXPECT_TRUE(conj("S_1_1", "aB", "bA"));
    EXPECT_TRUE(conj("S_1_1", "aB", "aaBA"));
    EXPECT_TRUE(conj("S_1_1", "aB", "BaBb"));
    EXPECT_TRUE(conj("S_1_1", "aaB", "aBa"));
    EXPECT_TRUE(conj("S_0_5", "aBcD", "caBcDC"));
}

TEST(Conjugacy, InvariantSeparates)
{
    EXPECT_FALSE(conj("S_1_1", "aB", "aaB"));
    EXPECT_FALSE(conj("S_1_1", "aaB", "AAb")); // inverse-transposes, not conjugate in SL2Z
    EXPECT_FALSE(conj("S_1_1", "aBB", "aaBB"));
    auto i1 = pa_invariant(word_to_path("S_1_1", "aB"));
    auto i2 = pa_invariant(word_to_path("S_1_1", "bA"));
    EXPECT_EQ(i1, i2);
    EXPECT_EQ(i1.format_version, 1);
    EXPECT_EQ(i1.minpoly, (IntPolynomial{1, -3, 1}));
}

TEST(Conjugacy, NonPseudoAnosovThrows)
{
    EXPECT_THROW(pa_invariant(word_to_path("S_1_1", "ab")), std::invalid_argument);
    EXPECT_THROW(conj("S_1_1", "a", "aB"), std::invalid_argument);
}
