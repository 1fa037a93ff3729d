#pragma once

#include "trackcert/classify.hpp"

#include "json.hpp"

#include <fstream>

namespace trackcert::io {

using json = nlohmann::json;

// Signed labels are written as plain integers: ~i is -i-1.
inline json to_json(const Triangulation& t)
{
    json tris = json::array();
    for (auto& tr : t.triangles()) tris.push_back({tr[0], tr[1], tr[2]});
    return {{"zeta", t.zeta()}, {"triangles", tris}, {"vertices", t.vertices().size()}, {"genus", t.genus()},
            {"marked", t.num_marked()}};
}

inline Triangulation triangulation_from_json(const json& j)
{
    const json& tris = j.is_array() ? j : j.at("triangles");
    std::vector<Tri> out;
    for (auto& t : tris) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("each triangle needs three labels");
        out.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    Triangulation tri(out);
    if (j.is_object() && j.contains("zeta") && j["zeta"].get<int>() != tri.zeta())
        throw std::invalid_argument("zeta does not match the triangles");
    return tri;
}

template <class V>
json vector_to_json(const std::vector<V>& v)
{
    json a = json::array();
    for (auto& x : v) a.push_back(x.get_str());
    return a;
}

inline json to_json(const std::vector<Rational>& v)
{
    BigInt d = 1;
    for (auto& x : v) d = lcm(d, x.get_den());
    json e = json::array();
    for (auto& x : v) e.push_back(BigInt(x.get_num() * (d / x.get_den())).get_str());
    return {{"scale", d.get_str()}, {"entries", e}};
}

inline std::vector<Rational> edge_vector_from_json(const json& j)
{
    Rational scale = 1;
    const json* e = &j;
    if (j.is_object()) {
        scale = Rational(j.value("scale", std::string("1")));
        e = &j.at("entries");
    }
    std::vector<Rational> v;
    for (auto& x : *e) {
        Rational q = x.is_string() ? Rational(x.get<std::string>()) : Rational(x.get<long>());
        q.canonicalize();
        v.push_back(q / scale);
    }
    return v;
}

inline json to_json(const Move& m)
{
    if (m.kind == Move::Flip) return {{"flip", m.edge}};
    return {{"relabel", m.perm}};
}

inline json to_json(const FlipPath& p)
{
    json moves = json::array();
    for (auto& s : p.steps()) moves.push_back(to_json(s.move));
    json j = {{"moves", moves}};
    if (!p.surface().empty())
        j["surface"] = p.surface();
    else
        j["triangulation"] = to_json(p.start());
    return j;
}

inline FlipPath path_from_json(const json& j)
{
    Triangulation start;
    std::string surface = j.value("surface", std::string());
    if (j.contains("triangulation"))
        start = triangulation_from_json(j["triangulation"]);
    else if (!surface.empty())
        start = builtin_surface(surface);
    else
        throw std::invalid_argument("path needs \"surface\" or \"triangulation\"");
    if (j.contains("word")) {
        if (surface.empty()) throw std::invalid_argument("a word needs a surface preset");
        return word_to_path(surface, j["word"].get<std::string>());
    }
    std::vector<Move> moves;
    for (auto& m : j.at("moves")) {
        if (m.contains("flip"))
            moves.push_back(Move::flip(m["flip"].get<int>()));
        else if (m.contains("relabel")) {
            auto perm = m["relabel"].get<std::vector<int>>();
            start.check_perm(perm);
            moves.push_back(Move::relabel(perm));
        } else
            throw std::invalid_argument("move must be {\"flip\": e} or {\"relabel\": [...]}");
    }
    return FlipPath(start, moves, surface);
}

inline json poly_to_json(const IntPolynomial& f)
{
    json c = json::array();
    for (auto& x : f.coeffs) c.push_back(x.get_str());
    return c;
}

inline IntPolynomial poly_from_json(const json& j)
{
    std::vector<BigInt> c;
    for (auto& x : j) c.push_back(x.is_string() ? BigInt(x.get<std::string>()) : BigInt(x.get<long>()));
    return IntPolynomial(c);
}

inline json to_json(const Certificate& c)
{
    json x = json::array(), f = json::array();
    for (auto& d : c.x) x.push_back(d.str());
    for (auto& p : c.f) f.push_back(poly_to_json(p));
    const auto& p = c.params;
    return {{"zeta", c.zeta},
            {"d1", p.d1},
            {"x", x},
            {"f", f},
            {"params", {{"t", p.t}, {"h0", p.h0}, {"h1", p.h1}, {"p1", p.p1}, {"d1", p.d1}, {"K", p.K.get_str()}}},
            {"mode", to_string(p.mode)}};
}

inline Certificate certificate_from_json(const json& j, const FlipPath& path)
{
    Certificate c;
    c.zeta = j.at("zeta").get<int>();
    for (auto& s : j.at("x")) c.x.push_back(FixedDecimal::parse(s.get<std::string>()));
    for (auto& f : j.at("f")) c.f.push_back(poly_from_json(f));
    auto& p = j.at("params");
    auto& q = c.params;
    q.zeta = path.zeta();
    q.path_length = path.length();
    q.t = p.at("t").get<unsigned long>();
    q.h0 = p.at("h0").get<unsigned long>();
    q.h1 = p.at("h1").get<unsigned long>();
    q.p1 = p.at("p1").get<unsigned long>();
    q.d1 = p.at("d1").get<unsigned long>();
    q.K = Rational(p.value("K", std::string("1")));
    q.K.canonicalize();
    std::string mode = j.value("mode", std::string("strict"));
    if (mode != "strict" && mode != "adaptive") throw std::invalid_argument("mode must be strict or adaptive");
    q.mode = mode == "strict" ? Mode::Strict : Mode::Adaptive;
    if (j.contains("d1") && j["d1"].get<unsigned long>() != q.d1) throw std::invalid_argument("d1 disagrees with params.d1");
    return c;
}

inline json to_json(const VerificationReport& r, bool timing = true)
{
    json stages = json::array();
    for (auto& s : r.stages) stages.push_back({{"stage", s.stage}, {"pass", s.pass}, {"detail", s.detail}});
    json j = {{"accepted", r.accepted}, {"code", r.code}, {"mode", to_string(r.mode)}, {"stages", stages},
              {"ties", r.ties}, {"splits", r.splits}};
    j["lambda_approx"] = r.stages.size() >= 7 ? r.lambda_approx.rescale(std::min(40u, r.lambda_approx.scale())).str() : "";
    if (r.period) j["period"] = {{"n", r.period->first}, {"m", r.period->second}};
    if (timing) j["seconds"] = r.seconds;
    return j;
}

inline json to_json(const PAConjInvariant& inv)
{
    return {{"format_version", PAConjInvariant::format_version}, {"cycle", inv.cycle}, {"minpoly", poly_to_json(inv.minpoly)}};
}

inline PAConjInvariant invariant_from_json(const json& j)
{
    if (j.at("format_version").get<int>() != PAConjInvariant::format_version) throw std::invalid_argument("unknown invariant format version");
    PAConjInvariant inv;
    inv.cycle = j.at("cycle").get<std::vector<std::string>>();
    inv.minpoly = poly_from_json(j.at("minpoly"));
    return inv;
}

// Reads a JSON file; parse errors carry file and byte offset.
inline json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline void write_file(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(1) << "\n";
}

} // namespace trackcert::io
