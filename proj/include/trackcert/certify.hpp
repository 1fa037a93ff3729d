#pragma once

#include "trackcert/mcg.hpp"
#include "trackcert/traintrack.hpp"

#include <chrono>
#include <cmath>
#include <variant>

namespace trackcert {

enum class Mode { Strict, Adaptive };

inline const char* to_string(Mode m) { return m == Mode::Strict ? "strict" : "adaptive"; }

struct VerifierParams {
    int zeta = 0;
    std::size_t path_length = 0;
    Rational K = 1;
    unsigned long t = 0, h0 = 0, h1 = 0, p1 = 0, d1 = 0;
    Mode mode = Mode::Strict;
};

inline VerifierParams derive_params(const FlipPath& path, const Rational& K)
{
    if (K <= 0) throw std::invalid_argument("K must be positive");
    VerifierParams p;
    unsigned long z = p.zeta = path.zeta(), l = p.path_length = path.length();
    p.K = K;
    Rational t = Rational(24 * z) * K * Rational(l * l);
    BigInt tc = -floor_of(-t);
    p.t = tc.get_ui();
    p.h0 = z * z * z * z * (l + 6);
    p.h1 = p.h0 + 2 * z;
    p.p1 = 2 * z * z * (2 * p.h1 + p.t + 3);
    p.d1 = p.p1 + p.t + z * p.h1 + 2;
    return p;
}

// Adaptive constants: heights measured from the polynomials, t the declared split bound.
inline VerifierParams adaptive_params(const FlipPath& path, const std::vector<IntPolynomial>& f, unsigned long tstar,
                                      const Rational& K = 1)
{
    VerifierParams p = derive_params(path, K);
    unsigned long z = p.zeta, h = 0;
    for (auto& g : f)
        if (!g.is_zero()) h = std::max(h, height_ceil(g));
    p.mode = Mode::Adaptive;
    p.t = tstar;
    p.h1 = h + 2 * z;
    p.p1 = 2 * z * z * (2 * p.h1 + p.t + 3);
    p.d1 = p.p1 + p.t + z * p.h1 + 2;
    return p;
}

struct Certificate {
    int zeta = 0;
    std::vector<FixedDecimal> x;
    std::vector<IntPolynomial> f;
    VerifierParams params;
};

struct StageResult {
    int stage;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    bool accepted = false;
    bool malformed = false;
    std::string code; // "OK", "CERT_MALFORMED", "CERT_STAGE_k"
    std::vector<StageResult> stages;
    FixedDecimal lambda_approx;
    std::vector<std::size_t> ties;
    std::size_t splits = 0;
    std::optional<std::pair<std::size_t, std::size_t>> period; // adaptive: (n, m)
    Mode mode = Mode::Strict;
    double seconds = 0;
    int first_failure() const
    {
        for (auto& s : stages)
            if (!s.pass) return s.stage;
        return 0;
    }
};

namespace detail {

inline FixedDecimal one_at(unsigned scale) { return FixedDecimal(pow10(scale), scale); }

// stage 10 in the adaptive flavour: split until a projective repeat
inline bool adaptive_split_filling(TrainTrack<FixedDecimal> T, unsigned places, unsigned scale, std::size_t tstar,
                                   std::size_t& steps, std::optional<std::pair<std::size_t, std::size_t>>& period,
                                   std::string& why)
{
    DecimalOrder cmp{places};
    auto normalize = [&](TrainTrack<FixedDecimal>& t) {
        FixedDecimal s = t.total();
        if (s.sign() <= 0) return false;
        for (auto& b : t.br)
            if (b.alive) b.mu = b.mu / s;
        return true;
    };
    if (!normalize(T)) {
        why = "empty track";
        return false;
    }
    std::vector<TrainTrack<FixedDecimal>::Canonical> forms;
    for (std::size_t step = 0; step <= tstar; ++step) {
        auto c = T.canonical_form(cmp);
        for (std::size_t i = 0; i < forms.size(); ++i) {
            if (forms[i].code != c.code) continue;
            bool eq = true;
            for (std::size_t k = 0; k < c.measures.size() && eq; ++k)
                if (cmp(forms[i].measures[k], c.measures[k]) != Ord::EQ) eq = false;
            if (eq) {
                period = std::make_pair(i, step - i);
                steps = step;
                if (!T.is_filling()) {
                    why = "periodic track is not filling";
                    return false;
                }
                return true;
            }
        }
        forms.push_back(std::move(c));
        if (step == tstar) break;
        if (T.num_branches() == 0 || T.loops > 0) {
            steps = step;
            why = "track lost a closed curve";
            return false;
        }
        T.maximal_split(cmp);
        if (!normalize(T)) {
            why = "empty track";
            return false;
        }
        (void)scale;
    }
    steps = tstar;
    why = "no projective repeat within the declared split bound";
    return false;
}

} // namespace detail

inline VerificationReport verify(const FlipPath& path, const Certificate& cert, const VerifierParams& params,
                                 std::size_t budget = 100000)
{
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.mode = params.mode;
    auto finish = [&](VerificationReport& r) -> VerificationReport& {
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.malformed)
            r.code = "CERT_MALFORMED";
        else if (int f = r.first_failure())
            r.code = "CERT_STAGE_" + std::to_string(f);
        else
            r.code = "OK";
        r.accepted = !r.malformed && r.first_failure() == 0 && r.stages.size() == 10;
        return r;
    };
    auto malformed = [&](const std::string& why) -> VerificationReport& {
        rep.malformed = true;
        rep.stages.push_back({0, false, why});
        return finish(rep);
    };
    int z = path.zeta();
    if (cert.zeta != z || int(cert.x.size()) != z || int(cert.f.size()) != z) return malformed("wrong number of entries");
    // the constants are recomputed, never trusted
    VerifierParams expect = params.mode == Mode::Strict ? derive_params(path, params.K)
                                                        : adaptive_params(path, cert.f, params.t, params.K);
    if (expect.t != params.t || expect.h0 != params.h0 || expect.h1 != params.h1 || expect.p1 != params.p1 ||
        expect.d1 != params.d1)
        return malformed("parameters do not match the recomputed constants");
    if (params.mode == Mode::Adaptive && params.t > budget) return malformed("declared split bound exceeds the budget");
    unsigned d1 = unsigned(params.d1), p1 = unsigned(params.p1);
    for (auto& x : cert.x)
        if (x.scale() != d1) return malformed("decimal not at scale d1");
    auto cmp = [p1](const FixedDecimal& a, const FixedDecimal& b) { return cmp_places(a, b, p1); };
    FixedDecimal zero(0, d1), one = detail::one_at(d1);
    auto stage = [&](int k, bool ok, std::string d = "") {
        rep.stages.push_back({k, ok, std::move(d)});
        return ok;
    };

    // 1
    {
        std::string bad;
        for (int i = 0; i < z && bad.empty(); ++i) {
            const auto& f = cert.f[i];
            if (f.is_zero())
                bad = "f" + std::to_string(i) + " is zero";
            else if (f.degree() > z)
                bad = "f" + std::to_string(i) + " has degree " + std::to_string(f.degree());
            else if (!height_at_most(f, params.h0))
                bad = "f" + std::to_string(i) + " exceeds height h0";
        }
        if (!stage(1, bad.empty(), bad)) return finish(rep);
    }
    // 2
    {
        std::string bad;
        for (int i = 0; i < z && bad.empty(); ++i)
            if (cmp(cert.x[i], zero) == Ord::LT || cmp(cert.x[i], one) == Ord::GT) bad = "x" + std::to_string(i) + " outside [0,1]";
        if (!stage(2, bad.empty(), bad)) return finish(rep);
    }
    // 3
    {
        std::string bad;
        for (int i = 0; i < z && bad.empty(); ++i) {
            const BigInt& m = cert.x[i].mantissa();
            int lo = sign_at_decimal(cert.f[i], m - 1, d1), hi = sign_at_decimal(cert.f[i], m + 1, d1);
            if (lo == hi) bad = "f" + std::to_string(i) + " does not change sign around x" + std::to_string(i);
        }
        if (!stage(3, bad.empty(), bad)) return finish(rep);
    }
    const Triangulation& tri = path.start();
    // 4
    {
        std::string bad;
        for (int t = 0; t < int(tri.triangles().size()) && bad.empty(); ++t)
            for (int k = 0; k < 3; ++k)
                if (cmp(corner_twice(tri, cert.x, t, k), zero) == Ord::LT) bad = "triangle inequality fails in triangle " + std::to_string(t);
        if (!stage(4, bad.empty(), bad)) return finish(rep);
    }
    // 5
    {
        std::string bad;
        for (int v = 0; v < int(tri.vertices().size()) && bad.empty(); ++v) {
            bool any = false;
            for (auto c : tri.vertices()[v])
                if (cmp(corner_twice(tri, cert.x, c.tri, c.k), zero) == Ord::EQ) any = true;
            if (!any) bad = "no zero corner at vertex " + std::to_string(v);
        }
        if (!stage(5, bad.empty(), bad)) return finish(rep);
    }
    // 6
    {
        FixedDecimal s = zero;
        for (auto& x : cert.x) s += x;
        if (!stage(6, cmp(s, one) == Ord::EQ, "sum is " + s.rescale(std::min(d1, 30u)).str() + "...")) return finish(rep);
    }
    // 7
    auto [piece, y] = path_piece_with(path, cert.x, cmp, false);
    rep.ties = piece.ties;
    FixedDecimal ysum = zero;
    for (auto& v : y) ysum += v;
    rep.lambda_approx = ysum;
    stage(7, true, piece.ties.empty() ? "" : std::to_string(piece.ties.size()) + " tie(s) at p1 places, first branch taken");
    // 8
    {
        std::string bad;
        for (int i = 0; i < z && bad.empty(); ++i)
            if (cmp(y[i], ysum * cert.x[i]) != Ord::EQ) bad = "y" + std::to_string(i) + " is not y * x" + std::to_string(i);
        if (!stage(8, bad.empty(), bad)) return finish(rep);
    }
    // 9
    if (!stage(9, cmp(ysum, one) == Ord::GT, "y = " + ysum.rescale(std::min(d1, 30u)).str())) return finish(rep);
    // 10
    {
        TrainTrack<FixedDecimal> T;
        try {
            T = from_triangulation(tri, cert.x, DecimalOrder{p1}, zero);
        } catch (const std::exception& e) {
            stage(10, false, e.what());
            return finish(rep);
        }
        if (params.mode == Mode::Strict) {
            DecimalOrder dc{p1};
            std::size_t done = 0;
            bool ok = true;
            std::string why;
            try {
                for (; done < params.t; ++done) {
                    if (T.num_branches() == 0 || T.loops > 0) break;
                    T.maximal_split(dc);
                }
            } catch (const std::exception& e) {
                ok = false;
                why = e.what();
            }
            rep.splits = done;
            ok = ok && T.is_filling();
            if (why.empty() && !ok) why = "split track is not filling";
            stage(10, ok, why);
        } else {
            std::string why;
            std::size_t steps = 0;
            bool ok = false;
            try {
                ok = detail::adaptive_split_filling(T, p1, d1, params.t, steps, rep.period, why);
            } catch (const std::exception& e) {
                why = e.what();
            }
            rep.splits = steps;
            stage(10, ok, why);
        }
    }
    return finish(rep);
}

// ---------------------------------------------------------------- generation

struct Failure {
    std::string reason;
    std::vector<std::string> diagnostics;
};

// The exact stable lamination of a pseudo-Anosov path.
struct StableData {
    FieldPtr field;
    NFElem lambda;
    std::vector<NFElem> v; // sums to 1
    IntMatrix A;
    std::size_t iterations = 0;
};

namespace detail {

// kernel of M over a number field, by elimination
inline std::vector<std::vector<NFElem>> kernel(std::vector<std::vector<NFElem>> M)
{
    int rows = int(M.size()), cols = rows ? int(M[0].size()) : 0;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!M[i][c].is_zero()) {
                p = i;
                break;
            }
        if (p == -1) continue;
        std::swap(M[p], M[r]);
        NFElem inv = NFElem(1) / M[r][c];
        for (auto& x : M[r]) x = x * inv;
        for (int i = 0; i < rows; ++i)
            if (i != r && !M[i][c].is_zero()) {
                NFElem f = M[i][c];
                for (int j = 0; j < cols; ++j) M[i][j] = M[i][j] - f * M[r][j];
            }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<std::vector<NFElem>> out;
    std::vector<char> is_piv(cols, 0);
    for (int c : pivcol) is_piv[c] = 1;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<NFElem> v(cols, NFElem(0));
        v[fc] = NFElem(1);
        for (int i = 0; i < int(pivcol.size()); ++i) v[pivcol[i]] = -M[i][fc];
        out.push_back(v);
    }
    return out;
}

inline bool in_cell(const PLPiece& piece, const std::vector<NFElem>& v)
{
    for (auto& g : piece.guards) {
        NFElem s(0);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (g[j] != 0) s += NFElem(Rational(g[j])) * v[j];
        if (s.sign() < 0) return false;
    }
    return true;
}

inline std::optional<StableData> eigen_on_piece(const FlipPath& path, const IntMatrix& A, const PLPiece& piece,
                                                const std::vector<Rational>& iterate, double ratio,
                                                std::vector<std::string>& diag)
{
    int z = path.zeta();
    IntPolynomial chi = poly::charpoly(A);
    IntPolynomial sf = poly::squarefree_part(chi);
    auto roots = poly::isolate_real_roots(sf);
    std::vector<std::pair<double, poly::RootInterval>> cands;
    for (auto& r : roots) {
        if (r.hi <= 1) continue;
        auto rr = poly::refine_root(sf, r, Rational(1, 1000000));
        if (rr.lo == rr.hi && rr.lo <= 1) continue;
        if (rr.hi <= 1) continue;
        if (rr.lo <= 1) {
            // root could be 1 itself
            if (sign_at_rational(sf, Rational(1)) == 0) {
                auto r2 = poly::refine_root(sf, rr, Rational(1, BigInt(1) << 200));
                if (r2.lo <= 1) continue;
                rr = r2;
            }
        }
        double mid = Rational((rr.lo + rr.hi) / 2).get_d();
        cands.push_back({std::abs(mid - ratio), rr});
    }
    std::sort(cands.begin(), cands.end(), [](auto& a, auto& b) { return a.first < b.first; });
    if (cands.empty()) diag.push_back("lambda = 1 cell: no real eigenvalue > 1 on the stable cell");
    for (auto& [dist, iso] : cands) {
        auto K = NumberField::of_root(sf, iso);
        FieldPtr KK = K;
        NFElem lam = NFElem::generator(KK);
        std::vector<std::vector<NFElem>> M(z, std::vector<NFElem>(z));
        for (int i = 0; i < z; ++i)
            for (int j = 0; j < z; ++j) M[i][j] = NFElem(KK, QPoly{Rational(A[i][j])}) - (i == j ? lam : NFElem(0));
        auto ker = kernel(M);
        if (ker.size() > 1) {
            // pin the corners that vanish on the iterate
            const Triangulation& tri = path.start();
            for (int t = 0; t < int(tri.triangles().size()); ++t)
                for (int k = 0; k < 3; ++k)
                    if (corner_twice(tri, iterate, t, k) == 0) {
                        std::vector<NFElem> row(z, NFElem(0));
                        const Tri& s = tri.triangles()[t];
                        row[edge_of(s[(k + 2) % 3])] += NFElem(1);
                        row[edge_of(s[k])] += NFElem(1);
                        row[edge_of(s[(k + 1) % 3])] -= NFElem(1);
                        M.push_back(row);
                    }
            ker = kernel(M);
        }
        if (ker.size() != 1) {
            diag.push_back("eigenspace of dimension " + std::to_string(ker.size()));
            continue;
        }
        auto v = ker[0];
        NFElem s(0);
        for (auto& x : v) s += x;
        if (s.is_zero()) continue;
        for (auto& x : v) x = x / s;
        bool nonneg = true;
        for (auto& x : v)
            if (x.sign() < 0) nonneg = false;
        if (!nonneg) {
            diag.push_back("eigenvector for root " + lam.decimal(6) + " has negative entries");
            continue;
        }
        if (!in_cell(piece, v)) {
            diag.push_back("eigenvector for root " + lam.decimal(6) + " leaves the cell");
            continue;
        }
        if (!is_lamination_with(path.start(), v, ExactOrder{}, NFElem(0))) {
            diag.push_back("eigenvector for root " + lam.decimal(6) + " is not a lamination");
            continue;
        }
        StableData sd;
        sd.field = KK;
        sd.lambda = lam;
        sd.v = v;
        sd.A = A;
        return sd;
    }
    return std::nullopt;
}

} // namespace detail

// Power-iterate to the attracting cell and solve for the eigenvector there.
inline std::variant<StableData, Failure> stable_lamination(const FlipPath& path, std::size_t budget)
{
    Failure fail;
    if (!(path.end() == path.start())) return Failure{"path is not a loop: end triangulation differs from the start", {}};
    if (path.length() == 0) return Failure{"empty path", {"identity: no dominant eigenvalue > 1"}};
    int z = path.zeta();
    std::vector<Rational> v = interior_probe(path.start());
    std::vector<std::string> sigs;
    std::size_t run = 0;
    std::vector<Rational> prev;
    std::set<std::string> tried;
    std::size_t cap = std::min<std::size_t>(budget, 400);
    for (std::size_t it = 0; it < cap; ++it) {
        std::string sig = piece_signature(path, v);
        run = (!sigs.empty() && sigs.back() == sig) ? run + 1 : 1;
        sigs.push_back(sig);
        prev = v;
        v = path_apply(path, v);
        // keep the integers small
        BigInt g = 0;
        for (auto& x : v) g = gcd(g, x.get_num());
        if (g > 1)
            for (auto& x : v) x /= g;
        if (v == prev) {
            fail.reason = "not stable";
            fail.diagnostics.push_back("lambda = 1: the probe lamination is fixed");
            return fail;
        }
        if (run >= std::size_t(z + 1) && tried.insert(sig).second) {
            Rational sp = 0, sv = 0;
            for (int i = 0; i < z; ++i) {
                sp += prev[i];
                sv += v[i];
            }
            PLPiece piece = path_piece_at(path, prev);
            auto img = path_apply(path, prev);
            Rational si = 0;
            for (auto& x : img) si += x;
            double ratio = Rational(si / sp).get_d();
            auto sd = detail::eigen_on_piece(path, piece.A, piece, prev, ratio, fail.diagnostics);
            if (sd) {
                sd->iterations = it + 1;
                return *sd;
            }
            if (ratio < 1.0000001) {
                fail.reason = "not stable";
                fail.diagnostics.push_back("lambda = 1 cell: growth ratio " + std::to_string(ratio));
                return fail;
            }
        }
    }
    // the cell never settled; try the pieces seen last
    std::vector<Rational> w = v;
    for (int k = 0; k < 8; ++k) {
        std::string sig = piece_signature(path, w);
        if (tried.insert(sig).second) {
            PLPiece piece = path_piece_at(path, w);
            auto img = path_apply(path, w);
            Rational a = 0, b = 0;
            for (int i = 0; i < z; ++i) {
                a += w[i];
                b += img[i];
            }
            auto sd = detail::eigen_on_piece(path, piece.A, piece, w, Rational(b / a).get_d(), fail.diagnostics);
            if (sd) {
                sd->iterations = cap;
                return *sd;
            }
        }
        w = path_apply(path, w);
    }
    fail.reason = "no stable cell - not pseudo-Anosov or budget too small";
    return fail;
}

// primitive squarefree integer polynomial vanishing at p(lambda)
inline IntPolynomial annihilating_polynomial(const NumberField& K, const QPoly& p0)
{
    QPoly p = K.reduce(p0);
    if (p.empty()) return IntPolynomial({0, 1});
    BigInt D = 1;
    for (auto& c : p) D = lcm(D, c.get_den());
    std::vector<BigInt> Q;
    for (auto& c : p) Q.push_back(c.get_num() * (D / c.get_den()));
    if (p.size() == 1) {
        QPoly lin{Rational(-Q[0]), Rational(D)};
        return poly::primitive(lin);
    }
    int k = K.degree();
    std::vector<Rational> xs, ys;
    for (int x0 = 0; x0 <= k; ++x0) {
        std::vector<BigInt> g(Q.size());
        for (std::size_t i = 0; i < Q.size(); ++i) g[i] = -Q[i];
        g[0] += D * x0;
        xs.push_back(x0);
        ys.push_back(Rational(poly::resultant(K.minpoly(), IntPolynomial(g))));
    }
    QPoly r = poly::interpolate(xs, ys);
    IntPolynomial f = poly::primitive(r);
    return poly::squarefree_part(f);
}

struct Generated {
    Certificate cert;
    StableData stable;
    SplitRecord<NFElem> periodicity;
};

// Build a certificate. In adaptive mode the split bound comes from the exact
// splitting sequence of the stable track.
inline std::variant<Generated, Failure> generate(const FlipPath& path, const VerifierParams& box, std::size_t budget)
{
    auto st = stable_lamination(path, budget);
    if (auto* f = std::get_if<Failure>(&st)) return *f;
    StableData sd = std::get<StableData>(st);
    Generated g;
    g.stable = sd;
    int z = path.zeta();
    std::vector<IntPolynomial> f;
    for (auto& x : sd.v) f.push_back(annihilating_polynomial(*sd.field, x.coeffs()));
    auto track = from_triangulation(path.start(), sd.v, ExactOrder{}, NFElem(0));
    g.periodicity = detect_periodicity(track, budget, z);
    VerifierParams params = box;
    if (box.mode == Mode::Adaptive) {
        if (!g.periodicity.found) return Failure{"splitting sequence did not become periodic within the budget", {}};
        params = adaptive_params(path, f, g.periodicity.n + g.periodicity.m, box.K);
    }
    for (auto& p : f) {
        if (p.degree() > z) throw std::logic_error("generated polynomial exceeds degree zeta");
        if (!height_at_most(p, params.h0)) throw std::logic_error("generated polynomial exceeds height h0");
    }
    g.cert.zeta = z;
    g.cert.f = f;
    g.cert.params = params;
    for (auto& x : sd.v) g.cert.x.push_back(FixedDecimal(sd.field->floor_scaled(x.coeffs(), unsigned(params.d1)), unsigned(params.d1)));
    return g;
}

struct RoundTrip {
    std::optional<Generated> generated;
    std::optional<Failure> failure;
    std::optional<VerificationReport> report;
    bool accepted() const { return report && report->accepted; }
};

inline RoundTrip roundtrip(const FlipPath& path, const Rational& K, Mode mode, std::size_t budget)
{
    RoundTrip rt;
    VerifierParams box = derive_params(path, K);
    box.mode = mode;
    auto g = generate(path, box, budget);
    if (auto* f = std::get_if<Failure>(&g)) {
        rt.failure = *f;
        return rt;
    }
    rt.generated = std::get<Generated>(g);
    rt.report = verify(path, rt.generated->cert, rt.generated->cert.params, budget);
    return rt;
}

} // namespace trackcert
