#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sticky {

// GMP-backed exact integers and rationals. Rationals are always canonical:
// lowest terms, positive denominator.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    Int r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline Rational rational_pow(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rational_pow: 0 to negative power");
        return 1 / rational_pow(base, -e);
    }
    Rational r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: cannot parse '" + s + "'");
    }
}

inline std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Decimal rendering for display only; computation stays exact.
inline std::string rational_to_decimal(const Rational& r, int digits) {
    if (digits <= 0) return rational_to_string(r);
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    Int ip = num / den;
    Int rem = num % den;
    std::ostringstream os;
    if (neg) os << '-';
    os << ip << '.';
    for (int i = 0; i < digits; ++i) {
        rem *= 10;
        os << rem / den;
        rem %= den;
    }
    return os.str();
}

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(int n) : re(n) {}  // NOLINT(google-explicit-constructor)

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw std::domain_error("GaussianRational: division by zero");
        GaussianRational c = a * b.conj();
        return {c.re / n, c.im / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational pow(int e) const {
        if (e < 0) throw std::invalid_argument("GaussianRational::pow: negative exponent");
        GaussianRational r = 1, b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
};

inline std::string gaussian_to_string(const GaussianRational& c) {
    if (c.im == 0) return rational_to_string(c.re);
    if (c.re == 0) {
        if (c.im == 1) return "i";
        if (c.im == -1) return "-i";
        return rational_to_string(c.im) + " i";
    }
    std::string s = "(" + rational_to_string(c.re);
    s += c.im < 0 ? " - " : " + ";
    Rational a = c.im < 0 ? Rational(-c.im) : c.im;
    s += rational_to_string(a) + " i)";
    return s;
}

}  // namespace sticky
