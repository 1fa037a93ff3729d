#pragma once

// Brute-force model of a multiarc inside one flip square. Boundary slots in
// cyclic order: 0=T 1=b 2=R 3=c 4=B 5=d 6=L 7=a, with sides a=L-T, b=T-R,
// c=R-B, d=B-L, diagonal e=L-R and the other diagonal f=T-B.

#include <array>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Key = std::array<int, 5>; // a b c d e
using Chord = std::pair<int, int>;

inline bool is_vertex(int s) { return s % 2 == 0; }

inline std::vector<Chord> chord_types()
{
    std::vector<Chord> out;
    for (int p = 0; p < 8; ++p)
        for (int q = p + 1; q < 8; ++q) {
            bool vp = is_vertex(p), vq = is_vertex(q);
            if (vp && vq && (q - p) % 8 != 4) continue;              // adjacent vertices: that is a side
            if (vp != vq && ((q - p + 8) % 8 == 1 || (p - q + 8) % 8 == 1)) continue; // vertex on its own side
            out.push_back({p, q});
        }
    return out;
}

inline bool between(int x, int p, int q) // strictly inside the cyclic interval (p, q)
{
    for (int s = (p + 1) % 8; s != q; s = (s + 1) % 8)
        if (s == x) return true;
    return false;
}

inline bool compatible(Chord u, Chord w)
{
    if (u.first == w.first || u.first == w.second || u.second == w.first || u.second == w.second) return true;
    return between(w.first, u.first, u.second) == between(w.second, u.first, u.second);
}

struct Table {
    std::map<Key, std::set<int>> image; // e' values seen for each (a,b,c,d,e)
};

inline int side_index(int slot) { return slot == 7 ? 0 : slot == 1 ? 1 : slot == 3 ? 2 : 3; }

// All configurations with at most `cap` arcs meeting each side or diagonal.
inline Table build(int cap)
{
    auto types = chord_types();
    Table t;
    std::vector<int> count(types.size(), 0);
    std::array<int, 4> copies{};
    auto crosses = [](Chord c, int p, int q) { // does chord c cross the diagonal p-q
        if (c.first == p || c.first == q || c.second == p || c.second == q) return false;
        return between(c.first, p, q) != between(c.second, p, q);
    };
    auto record = [&] {
        std::array<int, 4> ends{};
        int ecross = 0, fcross = 0, ealong = 0, falong = 0;
        for (std::size_t i = 0; i < types.size(); ++i) {
            if (!count[i]) continue;
            Chord c = types[i];
            for (int s : {c.first, c.second})
                if (!is_vertex(s)) ends[side_index(s)] += count[i];
            if (c == Chord{2, 6}) ealong += count[i];
            if (c == Chord{0, 4}) falong += count[i];
            if (crosses(c, 6, 2)) ecross += count[i];
            if (crosses(c, 0, 4)) fcross += count[i];
        }
        Key k;
        for (int s = 0; s < 4; ++s) {
            if (copies[s] && ends[s]) return;
            k[s] = copies[s] ? -copies[s] : ends[s];
        }
        k[4] = ealong ? -ealong : ecross;
        int f = falong ? -falong : fcross;
        bool empty = true;
        for (int x : k) empty = empty && x == 0;
        if (!empty || f) t.image[k].insert(f);
    };
    auto load = [&](std::size_t upto, int slot) {
        int n = 0;
        for (std::size_t i = 0; i < upto; ++i)
            if (types[i].first == slot || types[i].second == slot) n += count[i];
        return n;
    };
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == types.size()) {
            // side copies on sides no chord touches
            for (int a = 0; a <= cap; ++a)
                for (int b = 0; b <= cap; ++b)
                    for (int c = 0; c <= cap; ++c)
                        for (int d = 0; d <= cap; ++d) {
                            copies = {a, b, c, d};
                            record();
                        }
            return;
        }
        self(self, i + 1);
        for (std::size_t j : chosen)
            if (!compatible(types[i], types[j])) return;
        chosen.push_back(i);
        for (int n = 1; n <= cap; ++n) {
            count[i] = n;
            bool ok = true;
            for (int s : {types[i].first, types[i].second})
                if (!is_vertex(s) && load(types.size(), s) > cap) ok = false;
            if (!ok) break;
            self(self, i + 1);
        }
        count[i] = 0;
        chosen.pop_back();
    };
    rec(rec, 0);
    return t;
}

} // namespace oracle
