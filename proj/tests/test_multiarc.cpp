#include "multiarc_oracle.hpp"
#include "trackcert/mcg.hpp"

#include <gtest/gtest.h>

using namespace trackcert;

namespace {

const oracle::Table& table()
{
    static const oracle::Table t = oracle::build(3);
    return t;
}

// all multiarcs with entries in [lo, hi]
std::vector<std::vector<BigInt>> corpus(const Triangulation& t, int lo, int hi)
{
    std::vector<std::vector<BigInt>> out;
    std::vector<int> v(t.zeta(), lo);
    while (true) {
        std::vector<BigInt> w(v.begin(), v.end());
        if (is_multiarc(t, w)) out.push_back(w);
        int i = 0;
        while (i < t.zeta() && v[i] == hi) v[i++] = lo;
        if (i == t.zeta()) break;
        ++v[i];
    }
    return out;
}

} // namespace

TEST(MultiarcOracle, ChordTypes)
{
    EXPECT_EQ(oracle::chord_types().size(), 16u);
}

TEST(MultiarcOracle, LocalConfigurationsDetermineTheFlip)
{
    FlipSquare sq{4, 0, 1, 2, 3};
    std::size_t n = 0;
    for (auto& [k, img] : table().image) {
        ASSERT_EQ(img.size(), 1u);
        std::vector<BigInt> v(k.begin(), k.end());
        EXPECT_EQ(flip_multiarc(sq, v)[4], *img.begin()) << k[0] << " " << k[1] << " " << k[2] << " " << k[3] << " " << k[4];
        ++n;
    }
    EXPECT_GT(n, 10000u);
}

TEST(MultiarcOracle, SmallCorpusOnPresets)
{
    for (const char* name : {"S_1_1", "S_0_4"}) {
        auto t = builtin_surface(name);
        auto arcs = corpus(t, -1, 2);
        EXPECT_GT(arcs.size(), 3u) << name;
        std::size_t checked = 0;
        for (auto& v : arcs)
            for (int e = 0; e < t.zeta(); ++e) {
                if (!t.flippable(e)) continue;
                auto q = t.square(e);
                oracle::Key k{int(v[q.a].get_si()), int(v[q.b].get_si()), int(v[q.c].get_si()), int(v[q.d].get_si()),
                              int(v[q.e].get_si())};
                auto w = flip_multiarc(q, v);
                if (k == oracle::Key{}) {
                    EXPECT_EQ(w[e], 0);
                    continue;
                }
                auto it = table().image.find(k);
                ASSERT_NE(it, table().image.end()) << name << " edge " << e << " key " << k[0] << k[1] << k[2] << k[3] << k[4];
                EXPECT_EQ(w[e], *it->second.begin()) << name << " edge " << e;
                auto f = t.flip(e);
                EXPECT_TRUE(is_multiarc(f, w)) << name << " edge " << e;
                EXPECT_EQ(flip_multiarc(f.square(e), w), v) << name << " edge " << e;
                ++checked;
            }
        EXPECT_GT(checked, 0u);
    }
}
