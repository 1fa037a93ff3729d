#pragma once

#include "trackcert/numberfield.hpp"
#include "trackcert/surface.hpp"

#include <limits>
#include <set>

namespace trackcert {

// three-way comparisons used by tracks
inline Ord compare3(const Rational& a, const Rational& b) { return a < b ? Ord::LT : a == b ? Ord::EQ : Ord::GT; }
inline Ord compare3(const NFElem& a, const NFElem& b)
{
    int s = (a - b).sign();
    return s < 0 ? Ord::LT : s == 0 ? Ord::EQ : Ord::GT;
}

struct ExactOrder {
    template <class M>
    Ord operator()(const M& a, const M& b) const
    {
        return compare3(a, b);
    }
};

// equality to `places` decimal places, as in the verifier
struct DecimalOrder {
    unsigned places;
    Ord operator()(const FixedDecimal& a, const FixedDecimal& b) const { return cmp_places(a, b, places); }
};

// Branch end 2b+k is end k of branch b. Side 0 of a branch is on the left when
// running from end 0 to end 1. At a switch the large end X faces away from the
// small ends L and R, which are named as seen facing the small side.
template <class M>
class TrainTrack {
public:
    struct Branch {
        int sw[2] = {-1, -1};
        int reg[2] = {-1, -1};
        M mu{};
        bool alive = true;
    };
    struct Switch {
        int X = -1, L = -1, R = -1;
        bool alive = true;
    };
    struct Region {
        int chi = 1; // Euler characteristic with marked points filled in
        int marks = 0;
    };
    struct SplitEvent {
        std::vector<int> split;                 // large branches split
        std::vector<std::pair<int, int>> joins; // (removed, kept)
    };

    static int left_side(int end) { return end % 2 == 0 ? 0 : 1; }
    static int right_side(int end) { return 1 - left_side(end); }

    std::vector<Branch> br;
    std::vector<Switch> sw;
    std::vector<Region> reg;
    int loops = 0;

    int reg_of(int end, int side) const { return br[end / 2].reg[side]; }
    const M& mu(int b) const { return br[b].mu; }

    std::vector<int> live_branches() const
    {
        std::vector<int> out;
        for (int b = 0; b < int(br.size()); ++b)
            if (br[b].alive) out.push_back(b);
        return out;
    }
    std::size_t num_branches() const { return live_branches().size(); }
    std::size_t num_switches() const
    {
        std::size_t n = 0;
        for (auto& s : sw) n += s.alive;
        return n;
    }

    void set_slot(int s, char role, int end)
    {
        (role == 'X' ? sw[s].X : role == 'L' ? sw[s].L : sw[s].R) = end;
        br[end / 2].sw[end % 2] = s;
    }

    // role of an end at its switch
    char role_of(int end) const
    {
        const Switch& s = sw[br[end / 2].sw[end % 2]];
        return s.X == end ? 'X' : s.L == end ? 'L' : 'R';
    }

    bool is_large(int b) const
    {
        if (!br[b].alive) return false;
        return role_of(2 * b) == 'X' && role_of(2 * b + 1) == 'X';
    }

    M total() const
    {
        M t{};
        bool first = true;
        for (auto& b : br)
            if (b.alive) {
                t = first ? b.mu : M(t + b.mu);
                first = false;
            }
        return t;
    }

    // Fuse the branches of ends u and w at a removed junction; returns the end
    // that now stands for the far end of w's branch, or -1 if a loop closed.
    int join(int u, int w, SplitEvent* ev = nullptr)
    {
        int bu = u / 2, bw = w / 2;
        if (bu == bw) {
            int r0 = br[bu].reg[0], r1 = br[bu].reg[1];
            if (r0 != r1) {
                merge_regions(r0, r1, 0);
            }
            br[bu].alive = false;
            ++loops;
            return -1;
        }
        int fw = w ^ 1;
        int s = br[bw].sw[fw % 2];
        char role = role_of(fw);
        set_slot(s, role, u);
        br[bw].alive = false;
        if (ev) ev->joins.push_back({bw, bu});
        return u;
    }

    // region b absorbs region a; delta is added to the Euler characteristic
    void merge_regions(int a, int b, int delta)
    {
        if (a == b) {
            reg[a].chi += delta;
            return;
        }
        int keep = std::min(a, b), gone = std::max(a, b);
        reg[keep].chi = reg[a].chi + reg[b].chi + delta;
        reg[keep].marks = reg[a].marks + reg[b].marks;
        for (auto& x : br)
            for (auto& r : x.reg)
                if (r == gone) r = keep;
    }

    template <class Cmp>
    void split_branch(int e, Cmp cmp, SplitEvent* ev = nullptr)
    {
        if (!is_large(e)) throw std::invalid_argument("not splittable");
        int s0 = br[e].sw[0], s1 = br[e].sw[1];
        int L0 = sw[s0].L, R0 = sw[s0].R, L1 = sw[s1].L, R1 = sw[s1].R;
        int E0 = 2 * e, E1 = 2 * e + 1;
        const M& ma = br[R0 / 2].mu;
        const M& mb = br[L1 / 2].mu;
        Ord o = cmp(ma, mb);
        if (ev) ev->split.push_back(e);
        int cusp1 = reg_of(L1, right_side(L1)), cusp0 = reg_of(R0, left_side(R0));
        if (o == Ord::EQ) {
            br[e].alive = false;
            sw[s0].alive = sw[s1].alive = false;
            merge_regions(cusp0, cusp1, -1);
            int r1 = R1;
            int got = join(R0, L1, ev);
            // a far end of L1's branch may have been L0
            if (got != -1 && L1 / 2 != R0 / 2) {
                if (L0 == (L1 ^ 1)) L0 = R0;
                if (r1 == (L1 ^ 1)) r1 = R0;
            }
            join(L0, r1, ev);
            return;
        }
        if (o == Ord::GT) {
            br[e].mu = ma - mb;
            set_slot(s0, 'X', R0);
            set_slot(s0, 'L', L1);
            set_slot(s0, 'R', E0);
            set_slot(s1, 'X', R1);
            set_slot(s1, 'L', L0);
            set_slot(s1, 'R', E1);
        } else {
            br[e].mu = mb - ma;
            set_slot(s0, 'X', L1);
            set_slot(s0, 'L', E0);
            set_slot(s0, 'R', R0);
            set_slot(s1, 'X', L0);
            set_slot(s1, 'L', E1);
            set_slot(s1, 'R', R1);
        }
        br[e].reg[0] = cusp1;
        br[e].reg[1] = cusp0;
    }

    // split every branch of maximal measure
    template <class Cmp>
    SplitEvent maximal_split(Cmp cmp)
    {
        auto live = live_branches();
        if (live.empty()) throw std::invalid_argument("empty track");
        M top = br[live[0]].mu;
        for (int b : live)
            if (cmp(br[b].mu, top) == Ord::GT) top = br[b].mu;
        std::vector<int> todo;
        for (int b : live)
            if (cmp(br[b].mu, top) == Ord::EQ) {
                if (!is_large(b)) throw std::runtime_error("not carried / invalid state");
                todo.push_back(b);
            }
        SplitEvent ev;
        for (int b : todo) split_branch(b, cmp, &ev);
        return ev;
    }

    // boundary cycles of the complementary regions, as a union-find over branch sides
    std::vector<int> side_cycles() const
    {
        detail::DSU dsu(2 * br.size());
        for (auto& s : sw) {
            if (!s.alive) continue;
            auto side = [](int end, int which) { return 2 * (end / 2) + which; };
            dsu.unite(side(s.L, left_side(s.L)), side(s.X, right_side(s.X)));
            dsu.unite(side(s.R, right_side(s.R)), side(s.X, left_side(s.X)));
            dsu.unite(side(s.L, right_side(s.L)), side(s.R, left_side(s.R)));
        }
        std::vector<int> out(2 * br.size());
        for (int i = 0; i < int(out.size()); ++i) out[i] = dsu.find(i);
        return out;
    }

    // every region a disk or once-marked disk with enough cusps
    bool is_filling() const
    {
        if (loops > 0) return false;
        auto live = live_branches();
        if (live.empty()) return false;
        auto cyc = side_cycles();
        std::map<int, std::set<int>> cycles;
        for (int b : live)
            for (int k = 0; k < 2; ++k) cycles[br[b].reg[k]].insert(cyc[2 * b + k]);
        std::map<int, int> cusps;
        for (auto& s : sw)
            if (s.alive) ++cusps[reg_of(s.L, right_side(s.L))];
        for (auto& [r, cs] : cycles) {
            const Region& R = reg[r];
            if (R.chi != 1 || cs.size() != 1 || R.marks > 1) return false;
            if (cusps[r] < (R.marks ? 1 : 3)) return false;
        }
        return true;
    }

    // switch condition at every switch, under cmp
    template <class Cmp>
    bool switch_condition(Cmp cmp) const
    {
        for (auto& s : sw) {
            if (!s.alive) continue;
            M sum = br[s.L / 2].mu + br[s.R / 2].mu;
            if (cmp(sum, br[s.X / 2].mu) != Ord::EQ) return false;
        }
        return true;
    }

    // number of regions of each forbidden kind (nullgon, monogon, bigon, once-marked nullgon, annulus)
    int forbidden_regions() const
    {
        auto cyc = side_cycles();
        std::map<int, std::set<int>> cycles;
        for (int b : live_branches())
            for (int k = 0; k < 2; ++k) cycles[br[b].reg[k]].insert(cyc[2 * b + k]);
        std::map<int, int> cusps;
        for (auto& s : sw)
            if (s.alive) ++cusps[reg_of(s.L, right_side(s.L))];
        int bad = 0;
        for (auto& [r, cs] : cycles) {
            const Region& R = reg[r];
            if (R.chi == 1 && cs.size() == 1 && R.marks == 0 && cusps[r] < 3) ++bad;
            if (R.chi == 1 && cs.size() == 1 && R.marks == 1 && cusps[r] == 0) ++bad;
            if (R.chi == 0 && cs.size() == 2 && R.marks == 0 && cusps[r] == 0) ++bad;
        }
        return bad;
    }

    // ------------------------------------------------------------ canonical form

    struct Canonical {
        std::vector<long> code; // combinatorics, census and loop count
        std::vector<M> measures;
        std::vector<int> order; // old branch index of each canonical position
    };

    Canonical canonical_form() const
    {
        return canonical_form(ExactOrder{});
    }

    template <class Cmp>
    Canonical canonical_form(Cmp cmp) const
    {
        std::optional<Canonical> best;
        for (int b : live_branches())
            for (int dir = 0; dir < 2; ++dir) {
                Canonical c = traverse(b, dir);
                if (!best || c.code < best->code) {
                    best = std::move(c);
                } else if (c.code == best->code) {
                    for (std::size_t i = 0; i < c.measures.size(); ++i) {
                        Ord o = cmp(c.measures[i], best->measures[i]);
                        if (o == Ord::LT) {
                            best = std::move(c);
                            break;
                        }
                        if (o == Ord::GT) break;
                    }
                }
            }
        if (!best) return Canonical{{long(loops)}, {}, {}};
        return *best;
    }

    Canonical traverse(int b0, int dir) const
    {
        std::vector<int> bidx(br.size(), -1), flipped(br.size(), 0), sidx(sw.size(), -1);
        std::vector<int> border, sorder;
        auto add_branch = [&](int end) {
            int b = end / 2;
            if (bidx[b] != -1) return;
            bidx[b] = int(border.size());
            flipped[b] = end % 2;
            border.push_back(b);
        };
        add_branch(2 * b0 + dir);
        std::size_t qi = 0;
        auto live = live_branches();
        for (;;) {
            while (qi < border.size()) {
                int b = border[qi++];
                for (int k = 0; k < 2; ++k) {
                    int end = 2 * b + (k ^ flipped[b]);
                    int s = br[b].sw[end % 2];
                    if (sidx[s] != -1) continue;
                    sidx[s] = int(sorder.size());
                    sorder.push_back(s);
                    for (int e : {sw[s].X, sw[s].L, sw[s].R}) add_branch(e);
                }
            }
            int next = -1;
            for (int b : live)
                if (bidx[b] == -1) {
                    next = b;
                    break;
                }
            if (next == -1) break;
            add_branch(2 * next);
        }
        Canonical c;
        c.code.push_back(long(border.size()));
        c.code.push_back(long(sorder.size()));
        for (int s : sorder)
            for (int e : {sw[s].X, sw[s].L, sw[s].R}) {
                int b = e / 2;
                c.code.push_back(bidx[b]);
                c.code.push_back((e % 2) ^ flipped[b]);
            }
        std::map<int, int> rid;
        std::vector<int> rorder;
        for (int b : border)
            for (int k = 0; k < 2; ++k) {
                int r = br[b].reg[k ^ flipped[b]];
                auto it = rid.find(r);
                if (it == rid.end()) {
                    it = rid.emplace(r, int(rorder.size())).first;
                    rorder.push_back(r);
                }
                c.code.push_back(it->second);
            }
        for (int r : rorder) {
            c.code.push_back(reg[r].chi);
            c.code.push_back(reg[r].marks);
        }
        c.code.push_back(loops);
        for (int b : border) c.measures.push_back(br[b].mu);
        c.order = border;
        return c;
    }

    template <class F>
    auto map_measures(F f) const
    {
        using N = decltype(f(std::declval<M>()));
        TrainTrack<N> t;
        for (auto& b : br) {
            typename TrainTrack<N>::Branch nb;
            nb.sw[0] = b.sw[0];
            nb.sw[1] = b.sw[1];
            nb.reg[0] = b.reg[0];
            nb.reg[1] = b.reg[1];
            nb.alive = b.alive;
            if (b.alive) nb.mu = f(b.mu);
            t.br.push_back(nb);
        }
        for (auto& s : sw) t.sw.push_back({s.X, s.L, s.R, s.alive});
        for (auto& r : reg) t.reg.push_back({r.chi, r.marks});
        t.loops = loops;
        return t;
    }

    // drop dead entries and renumber
    void compact()
    {
        std::vector<int> bmap(br.size(), -1), smap(sw.size(), -1);
        std::vector<Branch> nb;
        std::vector<Switch> ns;
        for (int b = 0; b < int(br.size()); ++b)
            if (br[b].alive) {
                bmap[b] = int(nb.size());
                nb.push_back(br[b]);
            }
        for (int s = 0; s < int(sw.size()); ++s)
            if (sw[s].alive) {
                smap[s] = int(ns.size());
                ns.push_back(sw[s]);
            }
        auto mend = [&](int e) { return 2 * bmap[e / 2] + e % 2; };
        for (auto& s : ns) {
            s.X = mend(s.X);
            s.L = mend(s.L);
            s.R = mend(s.R);
        }
        for (auto& b : nb)
            for (auto& s : b.sw) s = smap[s];
        br = std::move(nb);
        sw = std::move(ns);
    }
};

// Train track carrying the lamination v on tri. Measures are doubled so corner
// branches stay integral: corner branch v_a + v_b - v_c, edge branch 2 v_e.
template <class M, class Cmp>
TrainTrack<M> from_triangulation(const Triangulation& tri, const std::vector<M>& v, Cmp cmp, const M& zero)
{
    if (!is_lamination_with(tri, v, cmp, zero)) throw std::invalid_argument("not a lamination");
    int F = int(tri.triangles().size());
    using TT = TrainTrack<M>;
    TT t;
    // pieces: 0..F-1 central, F + 3t + k corner pieces
    std::vector<char> corner_live(3 * F, 0);
    for (int i = 0; i < F; ++i)
        for (int k = 0; k < 3; ++k) corner_live[3 * i + k] = cmp(corner_twice(tri, v, i, k), zero) == Ord::GT;
    auto piece = [&](int i, int k) { return corner_live[3 * i + k] ? F + 3 * i + k : i; };
    detail::DSU dsu(4 * F);
    int pieces = F, arcs = 0;
    for (int c = 0; c < 3 * F; ++c) pieces += corner_live[c];
    std::vector<char> edge_live(tri.zeta(), 0);
    for (int e = 0; e < tri.zeta(); ++e) {
        edge_live[e] = cmp(v[e], zero) == Ord::GT;
        auto [i, k] = tri.locate(e);
        auto [j, l] = tri.locate(~e);
        if (edge_live[e]) {
            dsu.unite(piece(i, k), piece(j, (l + 1) % 3));
            dsu.unite(piece(i, (k + 1) % 3), piece(j, l));
            arcs += 2;
        } else {
            dsu.unite(i, j);
            arcs += 1;
        }
    }
    std::map<int, int> rid;
    auto region = [&](int p) {
        int r = dsu.find(p);
        auto it = rid.find(r);
        if (it == rid.end()) {
            it = rid.emplace(r, int(t.reg.size())).first;
            t.reg.push_back({0, 0});
        }
        return it->second;
    };
    std::vector<int> pc(4 * F, 0);
    for (int p = 0; p < F; ++p) ++pc[dsu.find(p)];
    for (int c = 0; c < 3 * F; ++c)
        if (corner_live[c]) ++pc[dsu.find(F + c)];
    std::vector<int> ac(4 * F, 0);
    for (int e = 0; e < tri.zeta(); ++e) {
        auto [i, k] = tri.locate(e);
        if (edge_live[e]) {
            ++ac[dsu.find(piece(i, k))];
            ++ac[dsu.find(piece(i, (k + 1) % 3))];
        } else {
            ++ac[dsu.find(i)];
        }
    }
    for (int p = 0; p < 4 * F; ++p)
        if (dsu.find(p) == p && (p < F || corner_live[p - F])) {
            int r = region(p);
            t.reg[r].chi = pc[p] - ac[p];
        }
    for (auto& vert : tri.vertices()) {
        Corner c = vert[0];
        ++t.reg[region(piece(c.tri, c.k))].marks;
    }
    for (auto& r : t.reg) r.chi += r.marks;
    (void)pieces;
    (void)arcs;

    // branches: edge branch e, corner branch zeta + 3i + k
    int z = tri.zeta();
    t.br.assign(z + 3 * F, {});
    for (auto& b : t.br) b.alive = false;
    t.sw.assign(3 * F, {});
    for (auto& s : t.sw) s.alive = false;
    for (int e = 0; e < z; ++e)
        if (edge_live[e]) {
            auto [i, k] = tri.locate(e);
            auto& b = t.br[e];
            b.alive = true;
            b.mu = v[e] + v[e];
            b.reg[0] = region(piece(i, (k + 1) % 3));
            b.reg[1] = region(piece(i, k));
        }
    for (int i = 0; i < F; ++i)
        for (int k = 0; k < 3; ++k)
            if (corner_live[3 * i + k]) {
                auto& b = t.br[z + 3 * i + k];
                b.alive = true;
                b.mu = corner_twice(tri, v, i, k);
                b.reg[0] = region(i);
                b.reg[1] = region(F + 3 * i + k);
            }
    // switch S(i,k) near side k: X edge branch, L corner k, R corner k+1
    std::vector<int> pending; // bivalent switches
    for (int i = 0; i < F; ++i)
        for (int k = 0; k < 3; ++k) {
            int x = tri.triangles()[i][k], e = edge_of(x);
            if (!edge_live[e]) continue;
            int s = 3 * i + k;
            t.sw[s].alive = true;
            int xe = 2 * e + (x >= 0 ? 0 : 1);
            t.sw[s].X = xe;
            t.br[e].sw[xe % 2] = s;
            int cl = z + 3 * i + k, cr = z + 3 * i + (k + 1) % 3;
            if (t.br[cl].alive) t.set_slot(s, 'L', 2 * cl + 1);
            if (t.br[cr].alive) t.set_slot(s, 'R', 2 * cr);
            if (t.sw[s].L == -1 || t.sw[s].R == -1) pending.push_back(s);
        }
    for (int s : pending) {
        int small = t.sw[s].L != -1 ? t.sw[s].L : t.sw[s].R;
        t.sw[s].alive = false;
        t.join(t.sw[s].X, small);
    }
    t.compact();
    return t;
}

template <class Cmp>
TrainTrack<Rational> from_triangulation(const Triangulation& tri, const std::vector<Rational>& v, Cmp cmp)
{
    return from_triangulation(tri, v, cmp, Rational(0));
}

inline TrainTrack<Rational> from_triangulation(const Triangulation& tri, const std::vector<Rational>& v)
{
    return from_triangulation(tri, v, ExactOrder{}, Rational(0));
}

// ---------------------------------------------------------------- periodicity

template <class M>
struct SplitRecord {
    bool found = false;
    std::size_t n = 0, m = 0;   // preperiodic and periodic lengths
    M lambda{};                 // total(n) / total(n+m)
    std::size_t steps = 0;      // maximal splits performed
    std::size_t coverage = 0;   // steps after n until every branch of s^n(T) was split
    bool filling_constant = true;
    bool filling = false;
    std::vector<typename TrainTrack<M>::Canonical> cycle; // canonical forms of s^n .. s^(n+m-1)
    std::vector<M> max_measure, total_measure;            // per step, starting at step 0
    std::vector<bool> filling_flags;
};

namespace detail {

template <class M>
bool proportional(const std::vector<M>& a, const M& sa, const std::vector<M>& b, const M& sb)
{
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] * sb == b[i] * sa)) return false;
    return true;
}

template <class M>
std::size_t coverage_after(const TrainTrack<M>& start, const std::vector<typename TrainTrack<M>::SplitEvent>& events,
                           std::size_t from)
{
    std::map<int, int> ident; // original branch -> current identity
    for (int b : start.live_branches()) ident[b] = b;
    std::size_t worst = 0;
    std::set<int> open;
    for (auto& [b, c] : ident) open.insert(b);
    for (std::size_t s = from; s < events.size() && !open.empty(); ++s) {
        auto& ev = events[s];
        for (auto& [gone, kept] : ev.joins)
            for (auto& [b, c] : ident)
                if (c == gone) c = kept;
        std::vector<int> done;
        for (int b : open)
            if (std::find(ev.split.begin(), ev.split.end(), ident[b]) != ev.split.end()) done.push_back(b);
        for (int b : done) {
            open.erase(b);
            worst = std::max(worst, s - from + 1);
        }
    }
    return open.empty() ? worst : std::numeric_limits<std::size_t>::max();
}

} // namespace detail

// Maximal-split until two tracks agree projectively (exact measures).
template <class M>
SplitRecord<M> detect_periodicity(TrainTrack<M> T, std::size_t max_steps, int zeta = 0)
{
    SplitRecord<M> rec;
    ExactOrder cmp;
    using Canon = typename TrainTrack<M>::Canonical;
    std::map<std::vector<long>, std::vector<std::size_t>> seen;
    std::vector<Canon> forms;
    std::vector<M> totals;
    std::vector<TrainTrack<M>> tracks;
    std::vector<typename TrainTrack<M>::SplitEvent> events;
    bool fill0 = T.is_filling();
    rec.filling = fill0;
    for (std::size_t step = 0;; ++step) {
        Canon c = T.canonical_form(cmp);
        M tot = T.total();
        totals.push_back(tot);
        rec.total_measure.push_back(tot);
        M top = T.br[T.live_branches()[0]].mu;
        for (int b : T.live_branches())
            if (T.br[b].mu > top) top = T.br[b].mu;
        rec.max_measure.push_back(top);
        bool fill = T.is_filling();
        rec.filling_flags.push_back(fill);
        if (fill != fill0) rec.filling_constant = false;
        auto& bucket = seen[c.code];
        for (std::size_t i : bucket)
            if (detail::proportional(forms[i].measures, totals[i], c.measures, tot)) {
                rec.found = true;
                rec.n = i;
                rec.m = step - i;
                rec.lambda = totals[i] / tot;
                rec.steps = step;
                for (std::size_t k = i; k < step; ++k) rec.cycle.push_back(forms[k]);
                // follow the cycle further to check branch coverage
                std::size_t need = 3 * std::size_t(zeta > 0 ? zeta : int(T.num_branches())) * rec.m + 1;
                TrainTrack<M> U = T;
                for (std::size_t k = 0; k < need && U.num_branches() > 0; ++k) events.push_back(U.maximal_split(cmp));
                rec.coverage = detail::coverage_after(tracks[i], events, i);
                return rec;
            }
        bucket.push_back(step);
        forms.push_back(std::move(c));
        tracks.push_back(T);
        if (step >= max_steps || T.num_branches() == 0) {
            rec.steps = step;
            return rec;
        }
        events.push_back(T.maximal_split(cmp));
    }
}

} // namespace trackcert
