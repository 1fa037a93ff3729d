#pragma once

#include "trackcert/poly.hpp"

#include <memory>
#include <mutex>
#include <optional>

namespace trackcert {

namespace detail {

struct Cplx {
    mpf_class re, im;
};

inline Cplx cmul(const Cplx& a, const Cplx& b, mp_bitcnt_t prec)
{
    return {mpf_class(a.re * b.re - a.im * b.im, prec), mpf_class(a.re * b.im + a.im * b.re, prec)};
}

inline Cplx cdiv(const Cplx& a, const Cplx& b, mp_bitcnt_t prec)
{
    mpf_class d(b.re * b.re + b.im * b.im, prec);
    return {mpf_class((a.re * b.re + a.im * b.im) / d, prec), mpf_class((a.im * b.re - a.re * b.im) / d, prec)};
}

// Durand-Kerner on a monic integer polynomial
inline std::vector<Cplx> complex_roots(const IntPolynomial& f, mp_bitcnt_t prec)
{
    int n = f.degree();
    std::vector<Cplx> z(n, Cplx{mpf_class(0, prec), mpf_class(0, prec)});
    Cplx seed{mpf_class(0.4, prec), mpf_class(0.9, prec)};
    Cplx w{mpf_class(1, prec), mpf_class(0, prec)};
    for (int i = 0; i < n; ++i) {
        z[i] = w;
        w = cmul(w, seed, prec);
    }
    mpf_class tol(1, prec);
    mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec - 24);
    for (int it = 0; it < 5000; ++it) {
        mpf_class worst(0, prec);
        for (int i = 0; i < n; ++i) {
            Cplx v{mpf_class(0, prec), mpf_class(0, prec)};
            for (int k = n; k >= 0; --k) {
                v = cmul(v, z[i], prec);
                v.re += mpf_class(f.coeffs[k], prec);
            }
            Cplx d{mpf_class(1, prec), mpf_class(0, prec)};
            for (int j = 0; j < n; ++j)
                if (j != i) d = cmul(d, Cplx{mpf_class(z[i].re - z[j].re, prec), mpf_class(z[i].im - z[j].im, prec)}, prec);
            Cplx step = cdiv(v, d, prec);
            z[i].re -= step.re;
            z[i].im -= step.im;
            mpf_class m(abs(step.re) + abs(step.im), prec);
            if (m > worst) worst = m;
        }
        if (worst < tol) break;
    }
    return z;
}

inline bool near_integer(const mpf_class& x, const mpf_class& tol, BigInt& out)
{
    mpf_class r = floor(x + 0.5);
    if (abs(x - r) > tol) return false;
    out = mpz_class(r);
    return true;
}

// sign change of g across the isolating interval, or exact vanishing at a rational root
inline bool has_root_in(const IntPolynomial& g, const poly::RootInterval& iso)
{
    if (iso.lo == iso.hi) return sign_at_rational(g, iso.lo) == 0;
    return sign_at_rational(g, iso.lo) * sign_at_rational(g, iso.hi) < 0;
}

} // namespace detail

// Smallest monic integer factor of the monic squarefree f vanishing at the root
// isolated by iso. Candidates come from products of numerical roots and are
// confirmed by exact division; nullopt if no proper factor could be confirmed.
inline std::optional<IntPolynomial> minimal_factor(const IntPolynomial& f, const poly::RootInterval& iso)
{
    int n = f.degree();
    if (n <= 1) return f;
    if (f.lead() != 1) return std::nullopt;
    for (mp_bitcnt_t prec : {256u, 1024u, 4096u}) {
        auto z = detail::complex_roots(f, prec);
        poly::RootInterval r = poly::refine_root(f, iso, Rational(1, 1 << 20));
        mpf_class target(mpf_class(r.lo.get_d(), prec) + mpf_class(r.hi.get_d(), prec));
        target /= 2;
        int li = 0;
        for (int i = 1; i < n; ++i) {
            mpf_class di = abs(z[i].re - target) + abs(z[i].im);
            mpf_class dl = abs(z[li].re - target) + abs(z[li].im);
            if (di < dl) li = i;
        }
        std::vector<int> others;
        for (int i = 0; i < n; ++i)
            if (i != li) others.push_back(i);
        mpf_class tol(1, prec);
        mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec / 3);
        std::optional<IntPolynomial> best;
        int m = int(others.size());
        for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
            int size = 1 + __builtin_popcountl(mask);
            if (best && size >= best->degree() + 0) continue;
            if (size == n) continue;
            std::vector<detail::Cplx> prod{{mpf_class(1, prec), mpf_class(0, prec)}};
            auto mulroot = [&](const detail::Cplx& rt) {
                std::vector<detail::Cplx> nx(prod.size() + 1, {mpf_class(0, prec), mpf_class(0, prec)});
                for (std::size_t k = 0; k < prod.size(); ++k) {
                    nx[k + 1].re += prod[k].re;
                    nx[k + 1].im += prod[k].im;
                    auto t = detail::cmul(prod[k], rt, prec);
                    nx[k].re -= t.re;
                    nx[k].im -= t.im;
                }
                prod = std::move(nx);
            };
            mulroot(z[li]);
            for (int b = 0; b < m; ++b)
                if (mask >> b & 1) mulroot(z[others[b]]);
            std::vector<BigInt> coeffs;
            bool ok = true;
            for (auto& c : prod) {
                BigInt v;
                if (abs(c.im) > tol * (1 + abs(c.re)) || !detail::near_integer(c.re, tol * (1 + abs(c.re)), v)) {
                    ok = false;
                    break;
                }
                coeffs.push_back(v);
            }
            if (!ok) continue;
            IntPolynomial cand(coeffs);
            if (cand.degree() != size) continue;
            if (!poly::exact_divide(f, cand, nullptr)) continue;
            if (!detail::has_root_in(cand, iso)) continue;
            best = cand;
        }
        if (best) return best;
        bool converged = true;
        for (auto& c : z)
            if (!(abs(c.re) + abs(c.im) < mpf_class(1e30, prec))) converged = false;
        if (converged) return f;
    }
    return std::nullopt;
}

// Q(lambda) for a real algebraic lambda, elements in the power basis
class NumberField {
public:
    NumberField(IntPolynomial minpoly, poly::RootInterval iso, bool proven_minimal)
        : min_(std::move(minpoly)), qmin_(poly::from_int(min_)), iso_(iso), minimal_(proven_minimal)
    {
        if (min_.degree() < 1) throw std::invalid_argument("number field needs a polynomial of degree >= 1");
        if (!detail::has_root_in(min_, iso_)) throw std::invalid_argument("interval does not isolate a root");
    }

    // the field generated by the root of squarefree monic f isolated by iso
    static std::shared_ptr<NumberField> of_root(const IntPolynomial& f, const poly::RootInterval& iso)
    {
        auto g = minimal_factor(f, iso);
        if (g) return std::make_shared<NumberField>(*g, iso, true);
        return std::make_shared<NumberField>(f, iso, false);
    }

    int degree() const { return min_.degree(); }
    const IntPolynomial& minpoly() const { return min_; }
    bool proven_minimal() const { return minimal_; }

    QPoly reduce(const QPoly& p) const
    {
        if (poly::deg(p) < degree()) {
            QPoly q = p;
            poly::trim(q);
            return q;
        }
        return poly::rem(p, qmin_);
    }

    QPoly inverse(const QPoly& p) const
    {
        auto [g, s] = poly::gcd_inverse(p, qmin_);
        if (poly::deg(g) != 0) throw std::domain_error("zero divisor in number field");
        return reduce(s);
    }

    poly::RootInterval interval() const
    {
        std::lock_guard<std::mutex> lk(mu_);
        return iso_;
    }

    void refine(const Rational& width) const
    {
        std::lock_guard<std::mutex> lk(mu_);
        if (iso_.hi - iso_.lo > width) iso_ = poly::refine_root(min_, iso_, width);
    }

    // sign of p(lambda)
    int sign(const QPoly& p0) const
    {
        QPoly p = reduce(p0);
        if (p.empty()) return 0;
        if (p.size() == 1) return sgn(p[0]);
        Rational dbound_unit = 0;
        for (;;) {
            poly::RootInterval r = interval();
            if (r.lo == r.hi) return sgn(poly::eval(p, r.lo));
            Rational mid = (r.lo + r.hi) / 2, w = (r.hi - r.lo) / 2;
            Rational R = std::max(abs(r.lo), abs(r.hi));
            Rational db = 0, Rp = 1;
            for (std::size_t i = 1; i < p.size(); ++i) {
                db += abs(p[i]) * long(i) * Rp;
                Rp *= R;
            }
            Rational v = poly::eval(p, mid);
            if (abs(v) > w * db) return sgn(v);
            refine((r.hi - r.lo) / Rational(BigInt(1) << 40));
        }
    }

    // floor(p(lambda) * 10^digits)
    BigInt floor_scaled(const QPoly& p0, unsigned digits) const
    {
        QPoly p = reduce(p0);
        if (p.empty()) return 0;
        if (p.size() == 1) return floor_of(p[0] * Rational(pow10(digits)));
        BigInt den = 1;
        for (auto& c : p) den = lcm(den, c.get_den());
        std::vector<BigInt> C;
        for (auto& c : p) C.push_back(c.get_num() * (den / c.get_den()));
        int n = int(C.size()) - 1;
        for (unsigned guard = 30;; guard *= 2) {
            unsigned P = digits + guard;
            BigInt L = root_digits(P);
            // lambda in [(L-10)/10^P, (L+10)/10^P]
            auto val = [&](const BigInt& x) {
                BigInt r = 0, sp = 1, s = pow10(P);
                for (int i = n; i >= 0; --i) {
                    r = r * x + C[i] * sp;
                    if (i > 0) sp *= s;
                }
                return r; // p(x/10^P) * den * 10^(P n)
            };
            // derivative bound times radius
            Rational R = abs(Rational(L, pow10(P))) + 1, db = 0, Rp = 1;
            for (int i = 1; i <= n; ++i) {
                db += Rational(abs(C[i]), den) * long(i) * Rp;
                Rp *= R;
            }
            Rational err = db * Rational(BigInt(10), pow10(P));
            Rational v(val(L), den * pow10(ulong(P) * ulong(n)));
            v /= den;
            v *= den; // keep exact
            Rational scale10(pow10(digits));
            BigInt a = floor_of((v - err) * scale10), b = floor_of((v + err) * scale10);
            if (a == b) return a;
            if (guard > 100000) throw std::runtime_error("floor_scaled: cannot separate from grid point");
        }
    }

    // integer L with |lambda - L/10^P| < 10^(1-P)
    BigInt root_digits(unsigned P) const
    {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = digits_cache_.find(P);
            if (it != digits_cache_.end()) return it->second;
        }
        refine(Rational(1, pow10(40)));
        poly::RootInterval r = interval();
        BigInt L;
        if (r.lo == r.hi) {
            L = floor_of(r.lo * Rational(pow10(P)));
        } else {
            unsigned p = 40;
            L = floor_of((r.lo + r.hi) / 2 * Rational(pow10(p)));
            auto newton = [&](BigInt& x, unsigned q) {
                int n = min_.degree();
                BigInt s = pow10(q);
                BigInt A = 0, B = 0, sp = 1;
                for (int i = n; i >= 0; --i) {
                    A = A * x + min_.coeffs[i] * sp;
                    if (i > 0) sp *= s;
                }
                sp = 1;
                for (int i = n; i >= 1; --i) {
                    B = B * x + min_.coeffs[i] * long(i) * sp;
                    if (i > 1) sp *= s;
                }
                if (B != 0) x -= tdiv(A, B);
            };
            while (p < P) {
                unsigned q = std::min(P, 2 * p);
                L *= pow10(q - p);
                newton(L, q);
                newton(L, q);
                p = q;
            }
            newton(L, P);
            Rational lo(L - 10, pow10(P)), hi(L + 10, pow10(P));
            bool ok = lo > r.lo && hi < r.hi && sign_at_rational(min_, lo) * sign_at_rational(min_, hi) < 0;
            if (!ok) {
                auto rr = poly::refine_root(min_, r, Rational(1, pow10(P)));
                L = floor_of(rr.lo * Rational(pow10(P)));
            }
        }
        std::lock_guard<std::mutex> lk(mu_);
        if (digits_cache_.size() > 8) digits_cache_.erase(digits_cache_.begin());
        digits_cache_[P] = L;
        return L;
    }

    std::string decimal(const QPoly& p, unsigned digits) const
    {
        return FixedDecimal(floor_scaled(p, digits), digits).str();
    }

private:
    IntPolynomial min_;
    QPoly qmin_;
    mutable std::mutex mu_;
    mutable poly::RootInterval iso_;
    mutable std::map<unsigned, BigInt> digits_cache_;
    bool minimal_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class NFElem {
public:
    NFElem() = default;
    NFElem(long v) : c_{Rational(v)} { poly::trim(c_); }
    NFElem(const Rational& v) : c_{v} { poly::trim(c_); }
    NFElem(FieldPtr k, QPoly c) : k_(std::move(k)), c_(k_ ? k_->reduce(c) : c) { poly::trim(c_); }

    static NFElem generator(FieldPtr k) { return NFElem(k, QPoly{Rational(0), Rational(1)}); }

    const FieldPtr& field() const { return k_; }
    const QPoly& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    int sign() const
    {
        if (c_.empty()) return 0;
        if (c_.size() == 1 || !k_) return sgn(c_[0]);
        return k_->sign(c_);
    }

    friend NFElem operator+(const NFElem& a, const NFElem& b) { return {pick(a, b), poly::add(a.c_, b.c_)}; }
    friend NFElem operator-(const NFElem& a, const NFElem& b) { return {pick(a, b), poly::sub(a.c_, b.c_)}; }
    NFElem operator-() const { return {k_, poly::scale(c_, Rational(-1))}; }
    friend NFElem operator*(const NFElem& a, const NFElem& b)
    {
        FieldPtr k = pick(a, b);
        QPoly p = poly::mul(a.c_, b.c_);
        if (k) p = k->reduce(p);
        return {k, p};
    }
    friend NFElem operator/(const NFElem& a, const NFElem& b)
    {
        if (b.is_zero()) throw std::domain_error("division by zero");
        FieldPtr k = pick(a, b);
        if (b.c_.size() == 1) return {k, poly::scale(a.c_, 1 / b.c_[0])};
        return a * NFElem(k, k->inverse(b.c_));
    }
    NFElem& operator+=(const NFElem& b) { return *this = *this + b; }
    NFElem& operator-=(const NFElem& b) { return *this = *this - b; }

    friend bool operator==(const NFElem& a, const NFElem& b) { return a.c_ == b.c_; }
    friend bool operator<(const NFElem& a, const NFElem& b) { return (a - b).sign() < 0; }
    friend bool operator>(const NFElem& a, const NFElem& b) { return (a - b).sign() > 0; }
    friend bool operator<=(const NFElem& a, const NFElem& b) { return (a - b).sign() <= 0; }
    friend bool operator>=(const NFElem& a, const NFElem& b) { return (a - b).sign() >= 0; }

    // power-basis coefficients, e.g. "[1/2,0,-3]"
    std::string str() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ",";
            s += c_[i].get_str();
        }
        return s + "]";
    }

    std::string decimal(unsigned digits) const
    {
        if (!k_) return FixedDecimal(floor_of((c_.empty() ? Rational(0) : c_[0]) * Rational(pow10(digits))), digits).str();
        return k_->decimal(c_, digits);
    }

    double approx() const { return std::stod(decimal(30)); }

private:
    static FieldPtr pick(const NFElem& a, const NFElem& b)
    {
        if (a.k_ && b.k_ && a.k_ != b.k_) throw std::invalid_argument("elements of different number fields");
        return a.k_ ? a.k_ : b.k_;
    }

    FieldPtr k_;
    QPoly c_;
};

} // namespace trackcert
