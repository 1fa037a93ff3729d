#pragma once

#include "trackcert/certify.hpp"

#include <algorithm>
#include <sstream>

namespace trackcert {

struct NTType {
    enum Kind { Periodic, PseudoAnosov, Inconclusive } kind = Inconclusive;
    int order = 0;                            // Periodic
    std::optional<Generated> generated;       // PseudoAnosov, and Inconclusive when a certificate was built
    std::optional<VerificationReport> report; // whenever verification ran
    std::vector<std::string> evidence;        // Inconclusive
    bool suspected_reducible = false;
};

inline const char* to_string(NTType::Kind k)
{
    switch (k) {
    case NTType::Periodic: return "periodic";
    case NTType::PseudoAnosov: return "pseudo-Anosov";
    default: return "inconclusive";
    }
}

inline int order_bound(const Triangulation& t) { return 8 * t.genus() + 4 * t.num_marked() - 2; }

inline NTType nt_classify(const FlipPath& path, const Rational& K = 1, Mode mode = Mode::Adaptive,
                          std::size_t budget = 100000)
{
    NTType out;
    if (!(path.end() == path.start())) {
        out.evidence.push_back("path is not a loop: end triangulation differs from the start");
        return out;
    }
    int bound = order_bound(path.start());
    FlipPath pk(path.start(), {}, path.surface());
    for (int k = 1; k <= bound; ++k) {
        pk = path_compose(pk, path);
        if (is_identity(pk)) {
            out.kind = NTType::Periodic;
            out.order = k;
            return out;
        }
    }
    auto rt = roundtrip(path, K, mode, budget);
    if (rt.accepted()) {
        out.kind = NTType::PseudoAnosov;
        out.generated = rt.generated;
        out.report = rt.report;
        return out;
    }
    if (rt.failure) {
        out.evidence.push_back(rt.failure->reason);
        for (auto& d : rt.failure->diagnostics)
            if (std::find(out.evidence.begin(), out.evidence.end(), d) == out.evidence.end()) out.evidence.push_back(d);
    }
    if (rt.report) {
        out.generated = rt.generated;
        out.report = rt.report;
        for (auto& s : rt.report->stages)
            if (!s.pass) out.evidence.push_back("verification failed at stage " + std::to_string(s.stage) + ": " + s.detail);
    }
    out.evidence.push_back("no periodic power up to the order bound " + std::to_string(bound));
    for (auto& e : out.evidence)
        if (e.find("lambda = 1") != std::string::npos || e.find("not filling") != std::string::npos ||
            e.find("not stable") != std::string::npos || e.find("closed curve") != std::string::npos)
            out.suspected_reducible = true;
    return out;
}

struct PAConjInvariant {
    static constexpr int format_version = 1;
    std::vector<std::string> cycle;
    IntPolynomial minpoly;
    friend bool operator==(const PAConjInvariant& a, const PAConjInvariant& b)
    {
        return a.cycle == b.cycle && a.minpoly == b.minpoly;
    }
};

namespace detail {

inline std::string encode_form(const TrainTrack<NFElem>::Canonical& c)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < c.code.size(); ++i) s << (i ? "," : "") << c.code[i];
    NFElem tot(0);
    for (auto& m : c.measures) tot = tot + m;
    s << "|";
    for (std::size_t i = 0; i < c.measures.size(); ++i) s << (i ? ";" : "") << (c.measures[i] / tot).str();
    return s.str();
}

inline std::vector<std::string> min_rotation(const std::vector<std::string>& v)
{
    std::vector<std::string> best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
        std::vector<std::string> w(v.begin() + r, v.end());
        w.insert(w.end(), v.begin(), v.begin() + r);
        if (w < best) best = w;
    }
    return best;
}

} // namespace detail

inline PAConjInvariant invariant_of(const Generated& g)
{
    if (!g.periodicity.found) throw std::runtime_error("splitting sequence not periodic within the budget; raise --budget");
    PAConjInvariant inv;
    std::vector<std::string> enc;
    for (auto& c : g.periodicity.cycle) enc.push_back(detail::encode_form(c));
    inv.cycle = detail::min_rotation(enc);
    inv.minpoly = g.stable.field->minpoly();
    return inv;
}

inline PAConjInvariant pa_invariant(const FlipPath& path, std::size_t budget = 100000)
{
    auto t = nt_classify(path, 1, Mode::Adaptive, budget);
    if (t.kind != NTType::PseudoAnosov) throw std::invalid_argument("wrong Nielsen-Thurston type");
    return invariant_of(*t.generated);
}

inline bool pa_conjugate(const FlipPath& p, const FlipPath& q, std::size_t budget = 100000)
{
    if (!(p.start() == q.start())) return false;
    return pa_invariant(p, budget) == pa_invariant(q, budget);
}

} // namespace trackcert
