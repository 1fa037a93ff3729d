#pragma once

#include "trackcert/exact.hpp"

#include <utility>
#include <vector>

namespace trackcert {

using QPoly = std::vector<Rational>; // low -> high
using IntMatrix = std::vector<std::vector<BigInt>>;

namespace poly {

inline void trim(QPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const QPoly& p) { return int(p.size()) - 1; }

inline QPoly from_int(const IntPolynomial& f)
{
    QPoly p;
    for (auto& c : f.coeffs) p.emplace_back(c);
    return p;
}

// scale to coprime integer coefficients with positive leading coefficient
inline IntPolynomial primitive(const QPoly& p0)
{
    QPoly p = p0;
    trim(p);
    if (p.empty()) return {};
    BigInt l = 1;
    for (auto& c : p) l = lcm(l, c.get_den());
    std::vector<BigInt> z;
    for (auto& c : p) z.push_back(c.get_num() * (l / c.get_den()));
    BigInt g = 0;
    for (auto& c : z) g = gcd(g, c);
    if (z.back() < 0) g = -g;
    for (auto& c : z) c /= g;
    return IntPolynomial(z);
}

inline QPoly add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly sub(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

inline QPoly scale(const QPoly& a, const Rational& s)
{
    QPoly r = a;
    for (auto& c : r) c *= s;
    trim(r);
    return r;
}

inline std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b)
{
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    QPoly r = a;
    trim(r);
    QPoly q;
    int db = deg(b);
    if (deg(r) >= db) q.assign(deg(r) - db + 1, Rational(0));
    while (!r.empty() && deg(r) >= db) {
        int s = deg(r) - db;
        Rational c = r.back() / b.back();
        q[s] = c;
        for (int i = 0; i <= db; ++i) r[s + i] -= c * b[i];
        r.pop_back();
        trim(r);
    }
    trim(q);
    return {q, r};
}

inline QPoly rem(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }

inline QPoly monic(const QPoly& a)
{
    if (a.empty()) return a;
    return scale(a, 1 / a.back());
}

inline QPoly gcd(QPoly a, QPoly b)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

// returns g = gcd(a,b) together with s such that s*a == g mod b
inline std::pair<QPoly, QPoly> gcd_inverse(QPoly a, QPoly b)
{
    QPoly s0{Rational(1)}, s1;
    trim(a);
    trim(b);
    while (!b.empty()) {
        auto [q, r] = divmod(a, b);
        QPoly s2 = sub(s0, mul(q, s1));
        a = std::move(b);
        b = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (a.empty()) return {a, s0};
    Rational l = a.back();
    return {scale(a, 1 / l), scale(s0, 1 / l)};
}

inline QPoly deriv(const QPoly& a)
{
    QPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * long(i));
    trim(r);
    return r;
}

inline Rational eval(const QPoly& p, const Rational& x)
{
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline IntPolynomial squarefree_part(const IntPolynomial& f)
{
    QPoly p = from_int(f);
    QPoly g = gcd(p, deriv(p));
    return primitive(divmod(p, g).first);
}

// exact division over Z; false if b does not divide a
inline bool exact_divide(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial* q)
{
    auto [qq, r] = divmod(from_int(a), from_int(b));
    if (!r.empty()) return false;
    for (auto& c : qq)
        if (c.get_den() != 1) return false;
    if (q) {
        std::vector<BigInt> z;
        for (auto& c : qq) z.push_back(c.get_num());
        *q = IntPolynomial(z);
    }
    return true;
}

inline IntPolynomial int_mul(const IntPolynomial& a, const IntPolynomial& b)
{
    return primitive(mul(from_int(a), from_int(b)));
}

// ---------------------------------------------------------------- real roots

inline std::vector<QPoly> sturm_sequence(const IntPolynomial& f)
{
    std::vector<QPoly> s{from_int(f)};
    s.push_back(deriv(s[0]));
    while (!s.back().empty()) {
        QPoly r = rem(s[s.size() - 2], s.back());
        if (r.empty()) break;
        s.push_back(scale(r, Rational(-1)));
    }
    return s;
}

inline int sign_changes(const std::vector<QPoly>& s, const Rational& x)
{
    int changes = 0, last = 0;
    for (auto& p : s) {
        int v = sgn(eval(p, x));
        if (v == 0) continue;
        if (last != 0 && v != last) ++changes;
        last = v;
    }
    return changes;
}

inline Rational cauchy_bound(const IntPolynomial& f)
{
    BigInt m = 0;
    for (int i = 0; i < f.degree(); ++i)
        if (abs(f.coeffs[i]) > m) m = abs(f.coeffs[i]);
    return Rational(m, abs(f.lead())) + 1;
}

struct RootInterval {
    Rational lo, hi; // exactly one root in (lo, hi), or lo == hi at an exact rational root
};

// isolating intervals for the real roots of squarefree f, in increasing order
inline std::vector<RootInterval> isolate_real_roots(const IntPolynomial& f)
{
    std::vector<RootInterval> out;
    if (f.degree() < 1) return out;
    auto s = sturm_sequence(f);
    Rational b = cauchy_bound(f);
    struct Job { Rational lo, hi; int clo, chi; };
    std::vector<Job> stack{{-b, b, sign_changes(s, -b), sign_changes(s, b)}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int n = j.clo - j.chi;
        if (n <= 0) continue;
        if (n == 1) {
            out.push_back({j.lo, j.hi});
            continue;
        }
        Rational mid = (j.lo + j.hi) / 2;
        for (long k = 3; sign_at_rational(f, mid) == 0; ++k) mid = j.lo + (j.hi - j.lo) * Rational(k, 2 * k + 1);
        int cm = sign_changes(s, mid);
        stack.push_back({j.lo, mid, j.clo, cm});
        stack.push_back({mid, j.hi, cm, j.chi});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

// shrink an isolating interval of squarefree f by bisection until hi - lo <= width
inline RootInterval refine_root(const IntPolynomial& f, RootInterval r, const Rational& width)
{
    if (r.lo == r.hi) return r;
    int slo = sign_at_rational(f, r.lo);
    while (r.hi - r.lo > width) {
        Rational mid = (r.lo + r.hi) / 2;
        int sm = sign_at_rational(f, mid);
        if (sm == 0) return {mid, mid};
        if (sm == slo) r.lo = mid;
        else r.hi = mid;
    }
    return r;
}

// ---------------------------------------------------------------- matrices

inline IntMatrix identity(std::size_t n)
{
    IntMatrix m(n, std::vector<BigInt>(n, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IntMatrix r(n, std::vector<BigInt>(m, BigInt(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    return r;
}

// fraction-free Gaussian elimination
inline BigInt bareiss_det(IntMatrix m)
{
    std::size_t n = m.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = std::move(t);
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Newton interpolation through (xs[i], ys[i])
inline QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    std::size_t n = xs.size();
    std::vector<Rational> c = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            c[i] = (c[i] - c[i - 1]) / (xs[i] - xs[i - j]);
            if (i == j) break;
        }
    QPoly r{c[n - 1]};
    for (std::size_t k = n - 1; k-- > 0;) {
        r = mul(r, QPoly{-xs[k], Rational(1)});
        r = add(r, QPoly{c[k]});
    }
    trim(r);
    return r;
}

// det(xI - A) by evaluation at n+1 integer points
inline IntPolynomial charpoly(const IntMatrix& a)
{
    std::size_t n = a.size();
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= n; ++k) {
        IntMatrix m = a;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) m[i][j] = -m[i][j];
            m[i][i] += long(k);
        }
        xs.emplace_back(long(k));
        ys.emplace_back(bareiss_det(m));
    }
    QPoly p = interpolate(xs, ys);
    std::vector<BigInt> z;
    for (auto& c : p) {
        if (c.get_den() != 1) throw std::logic_error("charpoly interpolation not integral");
        z.push_back(c.get_num());
    }
    return IntPolynomial(z);
}

inline BigInt resultant(const IntPolynomial& f, const IntPolynomial& g)
{
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    std::size_t N = std::size_t(m + n);
    IntMatrix s(N, std::vector<BigInt>(N, BigInt(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.coeffs[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.coeffs[n - j];
    return bareiss_det(s);
}

} // namespace poly
} // namespace trackcert
