#pragma once

#include "trackcert/poly.hpp"
#include "trackcert/surface.hpp"

#include <cctype>

namespace trackcert {

struct Move {
    enum Kind { Flip, Relabel } kind = Flip;
    int edge = 0;
    std::vector<int> perm;

    static Move flip(int e) { return {Flip, e, {}}; }
    static Move relabel(std::vector<int> p) { return {Relabel, 0, std::move(p)}; }
    friend bool operator==(const Move&, const Move&) = default;
};

inline std::vector<int> inverse_perm(const std::vector<int>& perm)
{
    std::vector<int> inv(perm.size());
    for (int i = 0; i < int(perm.size()); ++i) {
        int y = perm[i];
        inv[edge_of(y)] = y >= 0 ? i : ~i;
    }
    return inv;
}

template <class V>
std::vector<V> relabel_vector(const std::vector<int>& perm, const std::vector<V>& v)
{
    std::vector<V> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[edge_of(perm[i])] = v[i];
    return out;
}

// A flip path with its squares precomputed, so replay never rebuilds triangulations.
class FlipPath {
public:
    struct Step {
        Move move;
        FlipSquare square{};
        int new_side[2] = {0, 0}; // oriented labels completing the new triangle on e's positive side
    };

    FlipPath() = default;
    FlipPath(Triangulation start, std::vector<Move> moves, std::string surface = "")
        : start_(std::move(start)), surface_(std::move(surface))
    {
        Triangulation cur = start_;
        for (auto& m : moves) {
            Step s{m};
            if (m.kind == Move::Flip) {
                if (!cur.flippable(m.edge)) throw std::invalid_argument("unflippable");
                s.square = cur.square(m.edge);
                cur = cur.flip(m.edge);
                auto [t, k] = cur.locate(m.edge);
                s.new_side[0] = cur.triangles()[t][(k + 1) % 3];
                s.new_side[1] = cur.triangles()[t][(k + 2) % 3];
            } else {
                cur = cur.relabel(m.perm);
            }
            steps_.push_back(std::move(s));
        }
        end_ = cur;
    }

    const Triangulation& start() const { return start_; }
    const Triangulation& end() const { return end_; }
    const std::string& surface() const { return surface_; }
    std::size_t length() const { return steps_.size(); }
    const std::vector<Step>& steps() const { return steps_; }
    int zeta() const { return start_.zeta(); }

    std::vector<Move> moves() const
    {
        std::vector<Move> m;
        for (auto& s : steps_) m.push_back(s.move);
        return m;
    }

private:
    Triangulation start_, end_;
    std::vector<Step> steps_;
    std::string surface_;
};

inline FlipPath path_inverse(const FlipPath& p)
{
    std::vector<Move> m;
    for (auto it = p.steps().rbegin(); it != p.steps().rend(); ++it)
        m.push_back(it->move.kind == Move::Flip ? it->move : Move::relabel(inverse_perm(it->move.perm)));
    return FlipPath(p.end(), m, p.surface());
}

inline FlipPath path_compose(const FlipPath& p, const FlipPath& q)
{
    if (!(p.end() == q.start())) throw std::invalid_argument("composition mismatch: end of first path is not the start of the second");
    auto m = p.moves();
    auto n = q.moves();
    m.insert(m.end(), n.begin(), n.end());
    return FlipPath(p.start(), m, p.surface());
}

inline FlipPath path_power(const FlipPath& p, int k)
{
    if (k < 0) return path_power(path_inverse(p), -k);
    FlipPath out(p.start(), {}, p.surface());
    for (int i = 0; i < k; ++i) out = path_compose(out, p);
    return out;
}

// Lamination action; V is any ordered ring (Rational, NFElem, ...).
template <class V>
std::vector<V> path_apply(const FlipPath& p, std::vector<V> v)
{
    if (int(v.size()) != p.zeta()) throw std::invalid_argument("edge vector has wrong length");
    for (auto& s : p.steps()) {
        if (s.move.kind == Move::Flip)
            v = flip_lamination(s.square, std::move(v));
        else
            v = relabel_vector(s.move.perm, v);
    }
    return v;
}

inline std::vector<Rational> path_apply_checked(const FlipPath& p, const std::vector<Rational>& v)
{
    if (!is_lamination(p.start(), v)) throw std::invalid_argument("not a lamination on the start triangulation");
    return path_apply(p, v);
}

inline std::vector<BigInt> path_apply_multiarc(const FlipPath& p, std::vector<BigInt> v)
{
    if (int(v.size()) != p.zeta()) throw std::invalid_argument("edge vector has wrong length");
    for (auto& s : p.steps()) {
        if (s.move.kind == Move::Flip)
            v = flip_multiarc(s.square, std::move(v));
        else
            v = relabel_vector(s.move.perm, v);
    }
    return v;
}

struct PLPiece {
    IntMatrix A;                      // image = A v
    std::vector<std::vector<BigInt>> guards; // guards v >= 0
    std::vector<std::size_t> ties;          // steps whose comparison came out equal
};

// Walk the path choosing the max branch by cmp; ties take the a+c branch.
template <class V, class Cmp>
std::pair<PLPiece, std::vector<V>> path_piece_with(const FlipPath& p, std::vector<V> v, Cmp cmp, bool want_matrix = true)
{
    int z = p.zeta();
    if (int(v.size()) != z) throw std::invalid_argument("edge vector has wrong length");
    PLPiece piece;
    if (want_matrix) piece.A = poly::identity(z);
    auto& A = piece.A;
    for (std::size_t i = 0; i < p.steps().size(); ++i) {
        auto& s = p.steps()[i];
        if (s.move.kind == Move::Relabel) {
            v = relabel_vector(s.move.perm, v);
            if (want_matrix) A = relabel_vector(s.move.perm, A);
            continue;
        }
        auto& q = s.square;
        V ac = v[q.a] + v[q.c], bd = v[q.b] + v[q.d];
        Ord o = cmp(ac, bd);
        if (o == Ord::EQ) piece.ties.push_back(i);
        bool first = o != Ord::LT;
        v[q.e] = (first ? ac : bd) - v[q.e];
        if (want_matrix) {
            std::vector<BigInt> g(z);
            for (int j = 0; j < z; ++j) g[j] = (A[q.a][j] + A[q.c][j] - A[q.b][j] - A[q.d][j]) * (first ? 1 : -1);
            piece.guards.push_back(g);
            for (int j = 0; j < z; ++j)
                A[q.e][j] = (first ? A[q.a][j] + A[q.c][j] : A[q.b][j] + A[q.d][j]) - A[q.e][j];
        }
    }
    return {piece, v};
}

inline PLPiece path_piece_at(const FlipPath& p, const std::vector<Rational>& v)
{
    return path_piece_with(p, v, exact_cmp).first;
}

// Which guards signature a vector falls in, as a bit string over flips.
inline std::string piece_signature(const FlipPath& p, std::vector<Rational> v)
{
    std::string sig;
    for (auto& s : p.steps()) {
        if (s.move.kind == Move::Relabel) {
            v = relabel_vector(s.move.perm, v);
            continue;
        }
        auto& q = s.square;
        Rational ac = v[q.a] + v[q.c], bd = v[q.b] + v[q.d];
        sig += ac >= bd ? '1' : '0';
        v[q.e] = (ac >= bd ? ac : bd) - v[q.e];
    }
    return sig;
}

// Classes in H_1(S, marked points) of the current edges, over the start edges.
inline std::vector<std::vector<long>> path_homology(const FlipPath& p)
{
    int z = p.zeta();
    std::vector<std::vector<long>> c(z, std::vector<long>(z, 0));
    for (int i = 0; i < z; ++i) c[i][i] = 1;
    auto cls = [&](int label) {
        std::vector<long> r = c[edge_of(label)];
        if (label < 0)
            for (auto& x : r) x = -x;
        return r;
    };
    for (auto& s : p.steps()) {
        if (s.move.kind == Move::Relabel) {
            std::vector<std::vector<long>> n(z);
            for (int i = 0; i < z; ++i) {
                n[edge_of(s.move.perm[i])] = c[i];
                if (s.move.perm[i] < 0)
                    for (auto& x : n[edge_of(s.move.perm[i])]) x = -x;
            }
            c = n;
            continue;
        }
        auto x = cls(s.new_side[0]), y = cls(s.new_side[1]);
        for (int j = 0; j < z; ++j) c[s.move.edge][j] = -(x[j] + y[j]);
    }
    return c;
}

namespace detail {

// Is every c_i - e_i a rational combination of the triangle relations of tri?
inline bool homology_trivial(const Triangulation& tri, const std::vector<std::vector<long>>& c)
{
    int z = tri.zeta();
    std::vector<std::vector<Rational>> basis; // echelon rows
    std::vector<int> pivots;
    auto reduce = [&](std::vector<Rational> r) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            int pc = pivots[b];
            if (r[pc] != 0) {
                Rational f = r[pc] / basis[b][pc];
                for (int j = 0; j < z; ++j) r[j] -= f * basis[b][j];
            }
        }
        return r;
    };
    for (auto& t : tri.triangles()) {
        std::vector<Rational> r(z, 0);
        for (int x : t) r[edge_of(x)] += x >= 0 ? 1 : -1;
        r = reduce(r);
        for (int j = 0; j < z; ++j)
            if (r[j] != 0) {
                basis.push_back(r);
                pivots.push_back(j);
                break;
            }
    }
    for (int i = 0; i < z; ++i) {
        std::vector<Rational> r(z);
        for (int j = 0; j < z; ++j) r[j] = c[i][j] - (i == j ? 1 : 0);
        r = reduce(r);
        for (auto& x : r)
            if (x != 0) return false;
    }
    return true;
}

} // namespace detail

// A generic lamination on tri used as the interior probe.
inline std::vector<Rational> interior_probe(const Triangulation& tri)
{
    std::vector<Rational> v(tri.zeta());
    for (int i = 0; i < tri.zeta(); ++i) v[i] = 1000 + 37 * i + (i * i * 101) % 97;
    return remove_peripheral(tri, v);
}

// Label-identical endpoint, trivial action on relative homology, and every
// edge arc plus an interior lamination fixed.
inline bool is_identity(const FlipPath& p)
{
    if (!(p.end() == p.start())) return false;
    if (!detail::homology_trivial(p.start(), path_homology(p))) return false;
    int z = p.zeta();
    for (int i = 0; i < z; ++i) {
        std::vector<BigInt> arc(z, 0);
        arc[i] = -1;
        if (path_apply_multiarc(p, arc) != arc) return false;
    }
    auto probe = interior_probe(p.start());
    return path_apply(p, probe) == probe;
}

// ---------------------------------------------------------------- generators

struct GeneratorTable {
    std::string surface;
    std::map<char, std::vector<Move>> letters; // lowercase letters; uppercase is the inverse
};

inline const std::vector<GeneratorTable>& generator_tables();

inline FlipPath letter_path(const GeneratorTable& g, char c)
{
    char lc = char(std::tolower(static_cast<unsigned char>(c)));
    auto it = g.letters.find(lc);
    if (it == g.letters.end()) throw std::invalid_argument(std::string("unknown letter '") + c + "' for " + g.surface);
    FlipPath p(builtin_surface(g.surface), it->second, g.surface);
    return lc == c ? p : path_inverse(p);
}

inline FlipPath word_to_path(const std::string& surface, const std::string& word)
{
    Triangulation start = builtin_surface(surface);
    const GeneratorTable* g = nullptr;
    for (auto& t : generator_tables())
        if (t.surface == surface) g = &t;
    if (!g) throw std::invalid_argument("no generator table for " + surface + "; supply a flip path instead");
    std::vector<Move> moves;
    for (char c : word) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        auto m = letter_path(*g, c).moves();
        moves.insert(moves.end(), m.begin(), m.end());
    }
    return FlipPath(start, moves, surface);
}

} // namespace trackcert

#include "trackcert/generators.hpp"
