#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace trackcert {

using BigInt = mpz_class;
using Rational = mpq_class;

// decimal digits of |x|; zero has one digit
inline std::size_t digit_count(const BigInt& x)
{
    std::string s = BigInt(abs(x)).get_str();
    return s.size();
}

inline BigInt pow10(unsigned long n)
{
    static std::mutex mu;
    static std::map<unsigned long, BigInt> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
    if (n >= 64) {
        std::lock_guard<std::mutex> lk(mu);
        if (cache.size() > 64) cache.erase(cache.begin());
        cache.emplace(n, r);
    }
    return r;
}

// truncating division toward zero
inline BigInt tdiv(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt fdiv(const BigInt& a, const BigInt& b)
{
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline BigInt floor_of(const Rational& q)
{
    return fdiv(q.get_num(), q.get_den());
}

inline double log10_abs(const BigInt& x)
{
    if (x == 0) return -HUGE_VAL;
    long e = 0;
    double d = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log10(std::fabs(d)) + double(e) * std::log10(2.0);
}

// ---------------------------------------------------------------- polynomials

struct IntPolynomial {
    std::vector<BigInt> coeffs; // index = power

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> c) : coeffs(std::move(c)) { trim(); }
    IntPolynomial(std::initializer_list<long> c)
    {
        for (long x : c) coeffs.emplace_back(x);
        trim();
    }

    void trim()
    {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    int degree() const { return int(coeffs.size()) - 1; }
    const BigInt& lead() const { return coeffs.back(); }
    BigInt operator[](std::size_t i) const { return i < coeffs.size() ? coeffs[i] : BigInt(0); }

    BigInt eval(const BigInt& x) const
    {
        BigInt r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
        return r;
    }

    BigInt max_abs() const
    {
        BigInt m = 0;
        for (auto& c : coeffs)
            if (abs(c) > m) m = abs(c);
        return m;
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs == b.coeffs; }

    std::string str() const
    {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const BigInt& c = coeffs[i];
            if (c == 0) continue;
            if (!s.empty()) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            BigInt a = abs(c);
            if (a != 1 || i == 0) s += a.get_str();
            if (i >= 1) s += "x";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }
};

inline double poly_height(const IntPolynomial& f)
{
    if (f.is_zero()) throw std::domain_error("undefined height");
    return log10_abs(f.max_abs());
}

// exact form of height(f) <= h for integral h
inline bool height_at_most(const IntPolynomial& f, unsigned long h)
{
    return f.max_abs() <= pow10(h);
}

inline unsigned long height_ceil(const IntPolynomial& f)
{
    if (f.is_zero()) throw std::domain_error("undefined height");
    BigInt m = f.max_abs();
    unsigned long d = digit_count(m);
    // smallest h with m <= 10^h
    if (d > 0 && m <= pow10(d - 1)) return d - 1;
    return d;
}

// ---------------------------------------------------------------- decimals

class FixedDecimal {
public:
    FixedDecimal() = default;
    FixedDecimal(BigInt mantissa, unsigned scale) : m_(std::move(mantissa)), scale_(scale) {}

    static FixedDecimal from_int(long v, unsigned scale) { return {BigInt(v) * pow10(scale), scale}; }

    static FixedDecimal from_rational(const Rational& q, unsigned scale) // floor
    {
        return {fdiv(q.get_num() * pow10(scale), q.get_den()), scale};
    }

    static FixedDecimal parse(const std::string& s)
    {
        if (s.empty()) throw std::invalid_argument("empty decimal");
        std::size_t i = 0;
        bool neg = false;
        if (s[0] == '-' || s[0] == '+') {
            neg = s[0] == '-';
            i = 1;
        }
        std::string digits;
        unsigned scale = 0;
        bool dot = false;
        for (; i < s.size(); ++i) {
            char c = s[i];
            if (c == '.') {
                if (dot) throw std::invalid_argument("bad decimal: " + s);
                dot = true;
            } else if (c >= '0' && c <= '9') {
                digits += c;
                if (dot) ++scale;
            } else {
                throw std::invalid_argument("bad decimal: " + s);
            }
        }
        if (digits.empty()) throw std::invalid_argument("bad decimal: " + s);
        BigInt m(digits, 10);
        if (neg) m = -m;
        return {m, scale};
    }

    std::string str() const
    {
        BigInt a = abs(m_);
        std::string d = a.get_str();
        if (scale_ == 0) return (m_ < 0 ? "-" : "") + d;
        if (d.size() <= scale_) d = std::string(scale_ - d.size() + 1, '0') + d;
        std::string out = m_ < 0 ? "-" : "";
        out += d.substr(0, d.size() - scale_);
        out += '.';
        out += d.substr(d.size() - scale_);
        return out;
    }

    const BigInt& mantissa() const { return m_; }
    unsigned scale() const { return scale_; }
    int sign() const { return sgn(m_); }
    BigInt integer_part() const { return tdiv(m_, pow10(scale_)); }
    Rational to_rational() const { return Rational(m_, pow10(scale_)); }

    // truncates toward zero when the scale shrinks
    FixedDecimal rescale(unsigned s) const
    {
        if (s >= scale_) return {m_ * pow10(s - scale_), s};
        return {tdiv(m_, pow10(scale_ - s)), s};
    }

    FixedDecimal operator-() const { return {-m_, scale_}; }

    friend FixedDecimal operator+(const FixedDecimal& a, const FixedDecimal& b)
    {
        same_scale(a, b);
        return {a.m_ + b.m_, a.scale_};
    }
    friend FixedDecimal operator-(const FixedDecimal& a, const FixedDecimal& b)
    {
        same_scale(a, b);
        return {a.m_ - b.m_, a.scale_};
    }
    friend FixedDecimal operator*(const FixedDecimal& a, const FixedDecimal& b)
    {
        same_scale(a, b);
        return {tdiv(a.m_ * b.m_, pow10(b.scale_)), a.scale_};
    }
    friend FixedDecimal operator/(const FixedDecimal& a, const FixedDecimal& b)
    {
        same_scale(a, b);
        if (b.m_ == 0) throw std::domain_error("division by zero");
        return {tdiv(a.m_ * pow10(a.scale_), b.m_), a.scale_};
    }
    FixedDecimal& operator+=(const FixedDecimal& b) { return *this = *this + b; }
    FixedDecimal& operator-=(const FixedDecimal& b) { return *this = *this - b; }

    friend bool operator==(const FixedDecimal& a, const FixedDecimal& b)
    {
        return a.scale_ == b.scale_ && a.m_ == b.m_;
    }

    static void same_scale(const FixedDecimal& a, const FixedDecimal& b)
    {
        if (a.scale_ != b.scale_) throw std::invalid_argument("mismatched scales");
    }

private:
    BigInt m_ = 0;
    unsigned scale_ = 0;
};

enum class Ord { LT, EQ, GT };

inline const char* to_string(Ord o) { return o == Ord::LT ? "LT" : o == Ord::EQ ? "EQ" : "GT"; }

// truncate both operands to `places` fractional digits, then compare
inline Ord cmp_truncated(const FixedDecimal& a, const FixedDecimal& b, unsigned places)
{
    FixedDecimal::same_scale(a, b);
    if (places > a.scale()) throw std::invalid_argument("places exceed scale");
    BigInt p = pow10(a.scale() - places);
    int c = cmp(tdiv(a.mantissa(), p), tdiv(b.mantissa(), p));
    return c < 0 ? Ord::LT : c > 0 ? Ord::GT : Ord::EQ;
}

// compare by the first `places` fractional digits of the difference:
// EQ iff |a-b| < 10^-places
inline Ord cmp_places(const FixedDecimal& a, const FixedDecimal& b, unsigned places)
{
    FixedDecimal::same_scale(a, b);
    if (places > a.scale()) throw std::invalid_argument("places exceed scale");
    BigInt d = a.mantissa() - b.mantissa();
    if (abs(d) < pow10(a.scale() - places)) return Ord::EQ;
    return d < 0 ? Ord::LT : Ord::GT;
}

inline int sign_places(const FixedDecimal& a, unsigned places)
{
    if (places > a.scale()) throw std::invalid_argument("places exceed scale");
    if (abs(a.mantissa()) < pow10(a.scale() - places)) return 0;
    return a.sign();
}

struct AlgebraicBound {
    unsigned degree_bound = 1;
    double height_bound = 0;
};

inline bool zero_test(const FixedDecimal& a, const AlgebraicBound& bound)
{
    if (bound.degree_bound < 1 || bound.height_bound < 0) throw std::invalid_argument("bad algebraic bound");
    double need = bound.height_bound + std::log10(double(bound.degree_bound));
    if (double(a.scale()) <= need + 1) throw std::domain_error("precision below separation bound");
    unsigned n = unsigned(std::ceil(need));
    return abs(a.mantissa()) < pow10(a.scale() - n);
}

struct EigenBounds {
    double det_bound;
    double eigvec_bound;
    double eigval_bound;
};

inline EigenBounds eigen_height_bounds(unsigned m, double k, double alpha_height)
{
    if (m < 1 || k < 0) throw std::invalid_argument("eigen_height_bounds: m >= 1, k >= 0");
    double lm = std::log10(double(m));
    double mm = double(m) * double(m);
    return {mm * (k + lm + alpha_height), 2 * mm * (k + lm), double(m) * k + double(m) * lm + 2.0 * double(m)};
}

// Horner's rule with each product truncated at the scale of x.
// |error| < (deg f + 1) * 10^-scale * 10^(height(f) + deg f) when |x| <= 10.
inline FixedDecimal horner_eval(const IntPolynomial& f, const FixedDecimal& x)
{
    unsigned s = x.scale();
    FixedDecimal r(0, s);
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) r = r * x + FixedDecimal(*it * pow10(s), s);
    return r;
}

// exact sign of f(num / 10^scale)
inline int sign_at_decimal(const IntPolynomial& f, const BigInt& num, unsigned scale)
{
    if (f.is_zero()) return 0;
    int n = f.degree();
    BigInt den = pow10(scale);
    BigInt r = 0, dp = 1;
    // r = sum a_i num^i den^(n-i), accumulated by Horner
    for (int i = n; i >= 0; --i) {
        r = r * num + f.coeffs[i] * dp;
        if (i > 0) dp *= den;
    }
    return sgn(r);
}

inline int sign_at_rational(const IntPolynomial& f, const Rational& x)
{
    if (f.is_zero()) return 0;
    int n = f.degree();
    const BigInt& p = x.get_num();
    const BigInt& q = x.get_den();
    BigInt r = 0, qp = 1;
    for (int i = n; i >= 0; --i) {
        r = r * p + f.coeffs[i] * qp;
        if (i > 0) qp *= q;
    }
    return sgn(r);
}

} // namespace trackcert
