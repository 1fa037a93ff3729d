#include "trackcert/io.hpp"

#include <gtest/gtest.h>

using namespace trackcert;

namespace {

RoundTrip run(const char* s, const char* w, Mode m = Mode::Adaptive)
{
    return roundtrip(word_to_path(s, w), 1, m, 100000);
}

std::string failure_text(const RoundTrip& rt)
{
    std::string s = rt.failure ? rt.failure->reason : "";
    if (rt.failure)
        for (auto& d : rt.failure->diagnostics) s += "; " + d;
    return s;
}

} // namespace

TEST(Params, BoxConstants)
{
    FlipPath p(builtin_surface("S_1_1"), {Move::flip(0)});
    auto v = derive_params(p, 1);
    EXPECT_EQ(v.t, 72u);
    EXPECT_EQ(v.h0, 567u);
    EXPECT_EQ(v.h1, 573u);
    EXPECT_EQ(v.p1, 21978u);
    EXPECT_EQ(v.d1, 23771u);
    auto e = derive_params(FlipPath(builtin_surface("S_1_1"), {}), 1);
    EXPECT_EQ(e.t, 0u);
    EXPECT_EQ(e.h0, 486u);
    EXPECT_THROW(derive_params(p, 0), std::invalid_argument);
    auto half = derive_params(p, Rational(1, 7));
    EXPECT_EQ(half.t, 11u); // ceil(72/7)
}

TEST(Params, MonotoneInLengthAndK)
{
    auto t = builtin_surface("S_0_5");
    VerifierParams prev{};
    for (int l = 1; l <= 6; ++l) {
        std::vector<Move> m(l, Move::flip(1));
        auto v = derive_params(FlipPath(t, m), 1);
        EXPECT_GT(v.t, prev.t);
        EXPECT_GT(v.h0, prev.h0);
        EXPECT_GT(v.p1, prev.p1);
        EXPECT_GT(v.d1, prev.d1);
        EXPECT_GT(derive_params(FlipPath(t, m), 2).p1, v.p1);
        prev = v;
    }
}

TEST(Certify, TorusAcceptedInBothModes)
{
    for (Mode m : {Mode::Adaptive, Mode::Strict}) {
        auto rt = run("S_1_1", "aB", m);
        ASSERT_TRUE(rt.generated) << failure_text(rt);
        ASSERT_TRUE(rt.accepted()) << rt.report->code;
        EXPECT_EQ(rt.report->code, "OK");
        EXPECT_EQ(rt.report->stages.size(), 10u);
        EXPECT_EQ(rt.report->lambda_approx.rescale(20).str(), "2.61803398874989484820");
        // entries are floors of a vector summing to one
        const auto& c = rt.generated->cert;
        FixedDecimal sum(0, unsigned(c.params.d1));
        for (auto& x : c.x) sum = sum + x;
        EXPECT_EQ(sum.rescale(30).str(), "0.999999999999999999999999999999");
    }
}

TEST(Certify, SphereMapAccepted)
{
    auto rt = run("S_0_5", "aBcD");
    ASSERT_TRUE(rt.accepted()) << failure_text(rt);
    ASSERT_TRUE(rt.report->period);
    EXPECT_EQ(rt.report->period->first + rt.report->period->second, rt.generated->cert.params.t);
}

TEST(Certify, NonPseudoAnosovFailToGenerate)
{
    for (const char* w : {"", "aA", "a", "ab"}) {
        auto rt = run("S_1_1", w);
        EXPECT_FALSE(rt.accepted()) << w;
        EXPECT_TRUE(rt.failure) << w;
        EXPECT_FALSE(failure_text(rt).empty()) << w;
    }
    auto rt = run("S_0_5", "aB");
    EXPECT_FALSE(rt.accepted());
}

TEST(Certify, TamperedDigitsAreRejected)
{
    auto rt = run("S_1_1", "aaB");
    ASSERT_TRUE(rt.accepted());
    auto path = word_to_path("S_1_1", "aaB");
    const auto& c = rt.generated->cert;
    unsigned d1 = unsigned(c.params.d1), p1 = unsigned(c.params.p1);
    for (unsigned place : {1u, 7u, p1 / 2, p1 - 1}) {
        for (int i = 0; i < c.zeta; ++i) {
            Certificate bad = c;
            bad.x[i] = FixedDecimal(bad.x[i].mantissa() + pow10(d1 - place), d1);
            auto rep = verify(path, bad, bad.params);
            EXPECT_FALSE(rep.accepted) << "entry " << i << " place " << place;
            EXPECT_NE(rep.code, "OK");
        }
    }
    Certificate bad = c;
    bad.f[0].coeffs[0] += 1;
    EXPECT_FALSE(verify(path, bad, bad.params).accepted);
}

TEST(Certify, MalformedParameters)
{
    auto rt = run("S_1_1", "aB");
    ASSERT_TRUE(rt.accepted());
    auto path = word_to_path("S_1_1", "aB");
    auto c = rt.generated->cert;
    auto p = c.params;
    p.p1 += 1;
    EXPECT_EQ(verify(path, c, p).code, "CERT_MALFORMED");
    p = c.params;
    p.t += 1;
    EXPECT_EQ(verify(path, c, p).code, "CERT_MALFORMED");
    Certificate short_x = c;
    short_x.x.pop_back();
    EXPECT_EQ(verify(path, short_x, c.params).code, "CERT_MALFORMED");
    Certificate scale = c;
    scale.x[0] = scale.x[0].rescale(unsigned(c.params.d1) - 1);
    EXPECT_EQ(verify(path, scale, c.params).code, "CERT_MALFORMED");
    // the same certificate against another path fails
    auto other = word_to_path("S_1_1", "aaB");
    EXPECT_FALSE(verify(other, c, adaptive_params(other, c.f, c.params.t)).accepted);
}

TEST(Certify, JsonRoundTripGivesSameReport)
{
    auto rt = run("S_1_1", "aBB");
    ASSERT_TRUE(rt.accepted());
    auto path = word_to_path("S_1_1", "aBB");
    auto j = io::to_json(rt.generated->cert);
    auto back = io::certificate_from_json(nlohmann::json::parse(j.dump()), path);
    EXPECT_EQ(back.x, rt.generated->cert.x);
    EXPECT_EQ(back.f, rt.generated->cert.f);
    auto rep = verify(path, back, back.params);
    EXPECT_EQ(io::to_json(rep, false), io::to_json(*rt.report, false));
    auto pj = io::to_json(path);
    auto p2 = io::path_from_json(nlohmann::json::parse(pj.dump()));
    EXPECT_EQ(p2.moves().size(), path.moves().size());
    EXPECT_TRUE(p2.end() == path.end());
}
