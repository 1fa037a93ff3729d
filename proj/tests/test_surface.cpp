#include "trackcert/mcg.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trackcert;

namespace {

std::vector<Rational> Q(std::initializer_list<long> v)
{
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<BigInt> Z(std::initializer_list<long> v)
{
    std::vector<BigInt> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

} // namespace

TEST(Presets, Census)
{
    struct Row { const char* name; int zeta, genus, marked; } rows[] = {
        {"S_1_1", 3, 1, 1}, {"S_0_4", 6, 0, 4}, {"S_0_5", 9, 0, 5}, {"S_2_1", 9, 2, 1}};
    for (auto& r : rows) {
        auto t = builtin_surface(r.name);
        EXPECT_EQ(t.zeta(), r.zeta) << r.name;
        EXPECT_EQ(t.genus(), r.genus) << r.name;
        EXPECT_EQ(t.num_marked(), r.marked) << r.name;
        EXPECT_EQ(int(t.triangles().size()), 2 * r.zeta / 3) << r.name;
        EXPECT_EQ(t.zeta(), 6 * r.genus + 3 * r.marked - 6) << r.name;
    }
    try {
        builtin_surface("S_9_9");
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("S_0_5"), std::string::npos);
    }
}

TEST(Triangulation, RejectsBadInput)
{
    EXPECT_THROW(Triangulation(std::vector<Tri>{}), std::invalid_argument);
    EXPECT_THROW(Triangulation({{0, 1, 2}, {0, ~1, ~2}}), std::invalid_argument);
    EXPECT_THROW(Triangulation({{0, 1, 5}, {~0, ~1, ~5}}), std::invalid_argument);
}

TEST(Flip, Involution)
{
    for (auto& name : builtin_surface_names()) {
        auto t = builtin_surface(name);
        for (int e = 0; e < t.zeta(); ++e) {
            if (!t.flippable(e)) continue;
            auto f = t.flip(e);
            EXPECT_FALSE(f == t) << name << " " << e;
            EXPECT_TRUE(f.flip(e) == t) << name << " " << e;
            EXPECT_EQ(f.num_marked(), t.num_marked());
            EXPECT_EQ(f.genus(), t.genus());
        }
    }
}

TEST(Flip, TorusFlipsAreIsomorphic)
{
    auto t = builtin_surface("S_1_1");
    for (int e = 0; e < 3; ++e) EXPECT_TRUE(isomorphic(t.flip(e), t));
}

TEST(Flip, SelfFoldedEdgeIsUnflippable)
{
    // thrice-marked sphere as two self-folded triangles
    Triangulation t({{0, 1, ~1}, {~0, 2, ~2}});
    EXPECT_EQ(t.num_marked(), 3);
    EXPECT_FALSE(t.flippable(1));
    EXPECT_THROW(t.flip(1), std::invalid_argument);
    EXPECT_THROW(t.flip(7), std::invalid_argument);
}

TEST(Relabel, IsomorphismsAreRelabelings)
{
    auto t = builtin_surface("S_0_4");
    auto f = t.flip(0);
    for (auto& perm : isomorphisms(t, t)) EXPECT_TRUE(t.relabel(perm) == t);
    for (auto& perm : isomorphisms(f, t)) EXPECT_TRUE(f.relabel(perm) == t);
    EXPECT_FALSE(isomorphic(f, t)); // the flip changes vertex degrees here
    EXPECT_THROW(t.relabel({0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(t.relabel({0, 0, 2, 3, 4, 5}), std::invalid_argument);
}

TEST(Lamination, Membership)
{
    auto t = builtin_surface("S_1_1");
    EXPECT_FALSE(is_lamination(t, Q({0, 0, 0})));
    EXPECT_TRUE(is_lamination(t, Q({1, 1, 2})));
    EXPECT_FALSE(is_lamination(t, Q({3, 1, 1})));
    EXPECT_THROW(is_lamination(t, Q({1, 1})), std::invalid_argument);
    std::mt19937_64 rng(5);
    for (auto& name : builtin_surface_names()) {
        auto s = builtin_surface(name);
        for (int i = 0; i < 20; ++i) EXPECT_TRUE(is_lamination(s, random_lamination(s, rng))) << name;
    }
}

TEST(Lamination, FlipFormulaExamples)
{
    FlipSquare sq{4, 0, 1, 2, 3};
    EXPECT_EQ(flip_lamination(sq, Q({1, 0, 1, 0, 1}))[4], 1);
    EXPECT_EQ(flip_lamination(sq, Q({2, 1, 2, 1, 3}))[4], 1);
}

TEST(Lamination, FlipsKeepLaminations)
{
    std::mt19937_64 rng(9);
    for (auto& name : builtin_surface_names()) {
        auto t = builtin_surface(name);
        for (int i = 0; i < 30; ++i) {
            auto v = random_lamination(t, rng);
            std::uniform_int_distribution<int> pick(0, t.zeta() - 1);
            int e = pick(rng);
            if (!t.flippable(e)) continue;
            auto w = flip_lamination(t.square(e), v);
            auto f = t.flip(e);
            EXPECT_TRUE(is_lamination(f, w)) << name;
            EXPECT_EQ(flip_lamination(f.square(e), w), v) << name;
        }
    }
}

TEST(Multiarc, Membership)
{
    auto t = builtin_surface("S_1_1");
    EXPECT_FALSE(is_multiarc(t, Z({0, 0, 0})));
    EXPECT_TRUE(is_multiarc(t, Z({-1, 0, 0})));
    EXPECT_FALSE(is_multiarc(t, Z({1, 1, 1})));
    EXPECT_TRUE(is_multiarc(t, Z({1, 0, 0})));
    EXPECT_FALSE(is_multiarc(t, Z({1, 1, 2}))); // a closed curve, not an arc system
}

TEST(Multiarc, FlipFormulaExamples)
{
    FlipSquare sq{4, 0, 1, 2, 3};
    EXPECT_EQ(flip_multiarc(sq, Z({2, 2, 2, 2, 1}))[4], 3);
    EXPECT_EQ(flip_multiarc(sq, Z({1, 0, 0, 1, -1}))[4], 3);
    auto t = builtin_surface("S_1_1");
    EXPECT_EQ(flip_multiarc(t.square(0), Z({-1, 0, 0})), Z({1, 0, 0}));
}
