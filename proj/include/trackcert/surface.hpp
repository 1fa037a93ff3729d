#pragma once

#include "trackcert/exact.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <random>

namespace trackcert {

// Oriented edge labels: edge i is i, its reverse is ~i == -i-1.
inline int edge_of(int x) { return x >= 0 ? x : ~x; }

using Tri = std::array<int, 3>;

struct Corner {
    int tri, k;
    friend bool operator==(const Corner&, const Corner&) = default;
    friend auto operator<=>(const Corner&, const Corner&) = default;
};

// the square around e: triangle (e,a,b) and triangle (~e,c,d); a,c and b,d are opposite
struct FlipSquare {
    int e, a, b, c, d; // edge indices
};

namespace detail {

inline Tri rotate_min(Tri t)
{
    int k = int(std::min_element(t.begin(), t.end()) - t.begin());
    return {t[k], t[(k + 1) % 3], t[(k + 2) % 3]};
}

struct DSU {
    std::vector<int> p;
    explicit DSU(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x)
    {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a), b = find(b);
        if (a == b) return false;
        p[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

inline int slot(int label) { return label >= 0 ? 2 * label : 2 * ~label + 1; }

} // namespace detail

// Ideal triangulation with oriented edge labels. Triangles are kept
// rotation-normalized and sorted, so equality is label-sensitive set equality.
class Triangulation {
public:
    Triangulation() = default;

    explicit Triangulation(std::vector<Tri> tris)
    {
        if (tris.empty()) throw std::invalid_argument("triangulation has no triangles");
        for (auto& t : tris) t = detail::rotate_min(t);
        std::sort(tris.begin(), tris.end());
        tris_ = std::move(tris);
        zeta_ = int(tris_.size() * 3 / 2);
        if (int(tris_.size()) * 3 != 2 * zeta_) throw std::invalid_argument("odd number of triangle sides");
        loc_.assign(2 * zeta_, {-1, -1});
        for (int t = 0; t < int(tris_.size()); ++t)
            for (int k = 0; k < 3; ++k) {
                int x = tris_[t][k];
                if (edge_of(x) >= zeta_) throw std::invalid_argument("edge label out of range: " + std::to_string(x));
                auto& l = loc_[detail::slot(x)];
                if (l.first != -1) throw std::invalid_argument("label appears twice: " + std::to_string(x));
                l = {t, k};
            }
        for (auto& l : loc_)
            if (l.first == -1) throw std::invalid_argument("edge is missing a side");
        detail::DSU dsu(3 * tris_.size());
        for (int t = 0; t < int(tris_.size()); ++t)
            for (int k = 0; k < 3; ++k) {
                auto [t2, j] = loc_[detail::slot(~tris_[t][k])];
                dsu.unite(3 * t + k, 3 * t2 + (j + 1) % 3);
            }
        std::map<int, int> ids;
        vertex_of_.assign(3 * tris_.size(), 0);
        for (int c = 0; c < int(3 * tris_.size()); ++c) {
            int r = dsu.find(c);
            auto it = ids.find(r);
            if (it == ids.end()) {
                it = ids.emplace(r, int(vertices_.size())).first;
                vertices_.emplace_back();
            }
            vertices_[it->second].push_back({c / 3, c % 3});
            vertex_of_[c] = it->second;
        }
        int V = int(vertices_.size()), F = int(tris_.size());
        int chi = V - zeta_ + F;
        if (chi % 2) throw std::invalid_argument("inconsistent Euler characteristic");
        genus_ = (2 - chi) / 2;
        if (genus_ < 0) throw std::invalid_argument("negative genus");
    }

    int zeta() const { return zeta_; }
    int genus() const { return genus_; }
    int num_marked() const { return int(vertices_.size()); }
    const std::vector<Tri>& triangles() const { return tris_; }
    const std::vector<std::vector<Corner>>& vertices() const { return vertices_; }
    int vertex_of(Corner c) const { return vertex_of_[3 * c.tri + c.k]; }

    // (triangle, position) of an oriented label
    std::pair<int, int> locate(int label) const { return loc_[detail::slot(label)]; }

    bool flippable(int e) const
    {
        check_edge(e);
        return locate(e).first != locate(~e).first;
    }

    FlipSquare square(int e) const
    {
        check_edge(e);
        auto [t1, k1] = locate(e);
        auto [t2, k2] = locate(~e);
        if (t1 == t2) throw std::invalid_argument("unflippable");
        const Tri &p = tris_[t1], &q = tris_[t2];
        return {e, edge_of(p[(k1 + 1) % 3]), edge_of(p[(k1 + 2) % 3]), edge_of(q[(k2 + 1) % 3]), edge_of(q[(k2 + 2) % 3])};
    }

    // oriented labels of the square, in the order a,b,c,d
    std::array<int, 4> square_labels(int e) const
    {
        check_edge(e);
        auto [t1, k1] = locate(e);
        auto [t2, k2] = locate(~e);
        if (t1 == t2) throw std::invalid_argument("unflippable");
        const Tri &p = tris_[t1], &q = tris_[t2];
        return {p[(k1 + 1) % 3], p[(k1 + 2) % 3], q[(k2 + 1) % 3], q[(k2 + 2) % 3]};
    }

    // The new diagonal's orientation alternates with the parity of the position
    // of the smallest surrounding label, which makes flip an exact involution.
    Triangulation flip(int e) const
    {
        auto s = square_labels(e);
        int k = int(std::min_element(s.begin(), s.end()) - s.begin());
        auto [a, b, c, d] = s;
        auto [t1, k1] = locate(e);
        auto [t2, k2] = locate(~e);
        std::vector<Tri> out = tris_;
        if (k % 2 == 0) {
            out[t1] = {e, d, a};
            out[t2] = {~e, b, c};
        } else {
            out[t1] = {e, b, c};
            out[t2] = {~e, d, a};
        }
        return Triangulation(out);
    }

    // perm[i] is the new signed label of old edge i
    Triangulation relabel(const std::vector<int>& perm) const
    {
        check_perm(perm);
        std::vector<Tri> out = tris_;
        for (auto& t : out)
            for (auto& x : t) x = x >= 0 ? perm[x] : ~perm[~x];
        return Triangulation(out);
    }

    void check_perm(const std::vector<int>& perm) const
    {
        if (int(perm.size()) != zeta_) throw std::invalid_argument("relabel has wrong length");
        std::vector<char> seen(zeta_, 0);
        for (int x : perm) {
            if (edge_of(x) >= zeta_ || seen[edge_of(x)]) throw std::invalid_argument("relabel is not a bijection");
            seen[edge_of(x)] = 1;
        }
    }

    void check_edge(int e) const
    {
        if (e < 0 || e >= zeta_) throw std::invalid_argument("no such edge: " + std::to_string(e));
    }

    friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.tris_ == b.tris_; }

    std::string str() const
    {
        auto lab = [](int x) { return x >= 0 ? std::to_string(x) : "~" + std::to_string(~x); };
        std::string s = "[";
        for (std::size_t i = 0; i < tris_.size(); ++i) {
            if (i) s += ", ";
            s += "(" + lab(tris_[i][0]) + "," + lab(tris_[i][1]) + "," + lab(tris_[i][2]) + ")";
        }
        return s + "]";
    }

private:
    int zeta_ = 0, genus_ = 0;
    std::vector<Tri> tris_;
    std::vector<std::pair<int, int>> loc_;
    std::vector<std::vector<Corner>> vertices_;
    std::vector<int> vertex_of_;
};

inline std::vector<std::string> builtin_surface_names() { return {"S_1_1", "S_0_4", "S_0_5", "S_2_1"}; }

inline Triangulation builtin_surface(const std::string& name)
{
    if (name == "S_1_1") return Triangulation({{0, 1, 2}, {~0, ~1, ~2}});
    if (name == "S_0_4") return Triangulation({{0, 4, ~2}, {1, ~3, ~0}, {2, ~5, ~1}, {3, 5, ~4}});
    if (name == "S_0_5")
        return Triangulation({{0, 1, ~5}, {5, 2, ~6}, {6, 3, 4}, {~0, ~4, ~7}, {7, ~3, ~8}, {8, ~2, ~1}});
    if (name == "S_2_1")
        return Triangulation({{0, 1, ~4}, {4, ~0, ~5}, {5, ~1, ~6}, {6, 2, ~7}, {7, 3, ~8}, {8, ~2, ~3}});
    std::string all;
    for (auto& n : builtin_surface_names()) all += (all.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown surface '" + name + "'; available: " + all);
}

// Orientation-preserving label maps sending a onto b, as relabel permutations.
inline std::vector<std::vector<int>> isomorphisms(const Triangulation& a, const Triangulation& b)
{
    std::vector<std::vector<int>> out;
    if (a.zeta() != b.zeta()) return out;
    int F = int(a.triangles().size()), z = a.zeta();
    for (int t0 = 0; t0 < F; ++t0)
        for (int r0 = 0; r0 < 3; ++r0) {
            std::vector<int> tmap(F, -1), rot(F, 0);
            std::vector<int> perm(z, INT32_MIN);
            bool ok = true;
            std::vector<int> stack{0};
            tmap[0] = t0;
            rot[0] = r0;
            while (!stack.empty() && ok) {
                int t = stack.back();
                stack.pop_back();
                for (int k = 0; k < 3 && ok; ++k) {
                    int x = a.triangles()[t][k];
                    int y = b.triangles()[tmap[t]][(k + rot[t]) % 3];
                    int e = edge_of(x), img = x >= 0 ? y : ~y;
                    if (perm[e] == INT32_MIN)
                        perm[e] = img;
                    else if (perm[e] != img) {
                        ok = false;
                        break;
                    }
                    auto [tn, kn] = a.locate(~x);
                    auto [un, jn] = b.locate(~y);
                    int rn = ((jn - kn) % 3 + 3) % 3;
                    if (tmap[tn] == -1) {
                        tmap[tn] = un;
                        rot[tn] = rn;
                        stack.push_back(tn);
                    } else if (tmap[tn] != un || rot[tn] != rn) {
                        ok = false;
                    }
                }
            }
            if (!ok) continue;
            for (int t = 0; t < F; ++t)
                if (tmap[t] == -1) ok = false;
            if (!ok) continue;
            if (a.relabel(perm) == b) out.push_back(perm);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline bool isomorphic(const Triangulation& a, const Triangulation& b) { return !isomorphisms(a, b).empty(); }

// ---------------------------------------------------------------- laminations

inline Ord exact_cmp(const Rational& a, const Rational& b) { return a < b ? Ord::LT : a == b ? Ord::EQ : Ord::GT; }

// Corner value of corner k of triangle t, times two: v_{l(k-1)} + v_{l(k)} - v_{l(k+1)}.
template <class V>
V corner_twice(const Triangulation& tri, const std::vector<V>& v, int t, int k)
{
    const Tri& s = tri.triangles()[t];
    return v[edge_of(s[(k + 2) % 3])] + v[edge_of(s[k])] - v[edge_of(s[(k + 1) % 3])];
}

// Membership in the image of lamination coordinates. cmp decides the
// comparisons: exact for rationals, truncated for decimals.
template <class V, class Cmp>
bool is_lamination_with(const Triangulation& tri, const std::vector<V>& v, Cmp cmp, const V& zero)
{
    if (int(v.size()) != tri.zeta()) throw std::invalid_argument("edge vector has wrong length");
    V sum = zero;
    for (auto& x : v) sum += x;
    if (cmp(sum, zero) != Ord::GT) return false;
    for (auto& x : v)
        if (cmp(x, zero) == Ord::LT) return false;
    for (int t = 0; t < int(tri.triangles().size()); ++t)
        for (int k = 0; k < 3; ++k)
            if (cmp(corner_twice(tri, v, t, k), zero) == Ord::LT) return false;
    for (auto& vert : tri.vertices()) {
        bool any = false;
        for (auto c : vert)
            if (cmp(corner_twice(tri, v, c.tri, c.k), zero) == Ord::EQ) any = true;
        if (!any) return false;
    }
    return true;
}

inline bool is_lamination(const Triangulation& tri, const std::vector<Rational>& v)
{
    return is_lamination_with(tri, v, exact_cmp, Rational(0));
}

inline bool is_lamination(const Triangulation& tri, const std::vector<FixedDecimal>& v, unsigned places)
{
    if (v.empty()) throw std::invalid_argument("edge vector has wrong length");
    auto cmp = [places](const FixedDecimal& a, const FixedDecimal& b) { return cmp_places(a, b, places); };
    return is_lamination_with(tri, v, cmp, FixedDecimal(0, v[0].scale()));
}

template <class V>
V max_of(const V& a, const V& b)
{
    return a < b ? b : a;
}

template <class V>
std::vector<V> flip_lamination(const FlipSquare& s, std::vector<V> v)
{
    v[s.e] = max_of(V(v[s.a] + v[s.c]), V(v[s.b] + v[s.d])) - v[s.e];
    return v;
}

// Subtract peripheral curves so every vertex gets a zero corner.
inline std::vector<Rational> remove_peripheral(const Triangulation& tri, const std::vector<Rational>& v)
{
    int F = int(tri.triangles().size());
    std::vector<Rational> c(3 * F);
    for (int t = 0; t < F; ++t)
        for (int k = 0; k < 3; ++k) c[3 * t + k] = corner_twice(tri, v, t, k) / 2;
    for (auto& vert : tri.vertices()) {
        Rational m = c[3 * vert[0].tri + vert[0].k];
        for (auto cr : vert) m = std::min(m, c[3 * cr.tri + cr.k]);
        for (auto cr : vert) c[3 * cr.tri + cr.k] -= m;
    }
    std::vector<Rational> out(tri.zeta());
    for (int t = 0; t < F; ++t)
        for (int k = 0; k < 3; ++k) out[edge_of(tri.triangles()[t][k])] = c[3 * t + k] + c[3 * t + (k + 1) % 3];
    return out;
}

// A random lamination with integer coordinates in a box of size about n.
template <class Rng>
std::vector<Rational> random_lamination(const Triangulation& tri, Rng& rng, long n = 50)
{
    std::uniform_int_distribution<long> dist(n, 2 * n);
    for (;;) {
        std::vector<Rational> v(tri.zeta());
        for (auto& x : v) x = dist(rng);
        v = remove_peripheral(tri, v);
        if (is_lamination(tri, v)) return v;
    }
}

// ---------------------------------------------------------------- multiarcs

inline std::vector<BigInt> flip_multiarc(const FlipSquare& s, std::vector<BigInt> v)
{
    auto hat = [](const BigInt& x) { return x > 0 ? x : BigInt(0); };
    BigInt a = hat(v[s.a]), b = hat(v[s.b]), c = hat(v[s.c]), d = hat(v[s.d]), e = v[s.e];
    BigInt r;
    if (e >= a + b && a >= d && b >= c)
        r = a + b - e;
    else if (e >= c + d && d >= a && c >= b)
        r = c + d - e;
    else if (e <= 0 && a >= b && d >= c)
        r = a + d - e;
    else if (e <= 0 && b >= a && c >= d)
        r = b + c - e;
    else if (e >= 0 && a >= b + e && d >= c + e)
        r = a + d - 2 * e;
    else if (e >= 0 && b >= a + e && c >= d + e)
        r = b + c - 2 * e;
    else if (a + b >= e && b + e >= 2 * c + a && a + e >= 2 * d + b)
        r = BigInt(a + b - e) / 2;
    else if (c + d >= e && d + e >= 2 * a + c && c + e >= 2 * b + d)
        r = BigInt(c + d - e) / 2;
    else
        r = std::max(BigInt(a + c), BigInt(b + d)) - e;
    v[s.e] = r;
    return v;
}

// Per triangle: either even perimeter with triangle inequalities (only corner
// arcs), or one side exceeding the other two (terminal arcs from the opposite
// vertex). Components are then traced so closed curves are rejected.
inline bool is_multiarc(const Triangulation& tri, const std::vector<BigInt>& v)
{
    if (int(v.size()) != tri.zeta()) throw std::invalid_argument("edge vector has wrong length");
    BigInt total = 0;
    bool nonzero = false;
    for (auto& x : v) {
        if (x != 0) nonzero = true;
        total += abs(x);
    }
    if (!nonzero) return false;
    if (total > 1000000) throw std::invalid_argument("multiarc too large to trace");
    std::vector<long> n(tri.zeta());
    for (int i = 0; i < tri.zeta(); ++i) n[i] = v[i] > 0 ? v[i].get_si() : 0;
    std::vector<long> base(tri.zeta() + 1, 0);
    for (int i = 0; i < tri.zeta(); ++i) base[i + 1] = base[i] + n[i];
    detail::DSU dsu(base.back() + 1);
    std::vector<char> anchored(base.back() + 1, 0);
    // point at position p (from the side's start) on an oriented side
    auto point = [&](int label, long p) {
        int e = edge_of(label);
        return base[e] + (label >= 0 ? p : n[e] - 1 - p);
    };
    for (int t = 0; t < int(tri.triangles().size()); ++t) {
        const Tri& s = tri.triangles()[t];
        long m[3] = {n[edge_of(s[0])], n[edge_of(s[1])], n[edge_of(s[2])]};
        long x[3] = {0, 0, 0}, term = 0;
        int tv = -1; // vertex index of terminal arcs
        for (int k = 0; k < 3; ++k) {
            long opp = m[(k + 1) % 3], o1 = m[k], o2 = m[(k + 2) % 3];
            if (opp > o1 + o2) {
                tv = k;
                term = opp - o1 - o2;
            }
        }
        if (tv == -1) {
            if ((m[0] + m[1] + m[2]) % 2) return false;
            for (int k = 0; k < 3; ++k) x[k] = (m[(k + 2) % 3] + m[k] - m[(k + 1) % 3]) / 2;
        } else {
            int k = tv;
            x[k] = 0;
            x[(k + 1) % 3] = m[k];
            x[(k + 2) % 3] = m[(k + 2) % 3];
        }
        // corner arcs at P_k join side k-1 near its end to side k near its start
        for (int k = 0; k < 3; ++k) {
            int prev = s[(k + 2) % 3], cur = s[k];
            long mp = m[(k + 2) % 3];
            for (long j = 0; j < x[k]; ++j) dsu.unite(int(point(prev, mp - 1 - j)), int(point(cur, j)));
        }
        if (tv != -1) {
            int side = s[(tv + 1) % 3];
            long first = x[(tv + 1) % 3];
            for (long j = 0; j < term; ++j) anchored[point(side, first + j)] = 1;
        }
    }
    std::vector<char> comp(base.back() + 1, 0);
    for (long p = 0; p < base.back(); ++p)
        if (anchored[p]) comp[dsu.find(int(p))] = 1;
    for (long p = 0; p < base.back(); ++p)
        if (!comp[dsu.find(int(p))]) return false;
    return true;
}

} // namespace trackcert
