#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "sticky/rational.hpp"

namespace sticky {

/// Monomial s+^ep s-^em in the deformation weights.
struct Monomial {
    int ep = 0;
    int em = 0;

    int degree() const { return ep + em; }
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.ep == b.ep && a.em == b.em;
    }
    // Graded lex with s+ ranked above s-.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return a.ep < b.ep;
    }
};

/// Element of the polynomial ring Q(i)[s+, s-], kept canonical: no zero
/// coefficients are stored, so equality is plain map equality.
class Scalar {
  public:
    using TermMap = std::map<Monomial, GaussianRational>;

    Scalar() = default;
    Scalar(int n) { insert({0, 0}, GaussianRational(n)); }              // NOLINT
    Scalar(const Rational& r) { insert({0, 0}, GaussianRational(r)); }  // NOLINT
    Scalar(const GaussianRational& c) { insert({0, 0}, c); }            // NOLINT

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar sigma_plus() { return monomial(1, 0, 1); }
    static Scalar sigma_minus() { return monomial(0, 1, 1); }
    static Scalar monomial(int ep, int em, const GaussianRational& c) {
        if (ep < 0 || em < 0) throw std::invalid_argument("Scalar: negative exponent");
        Scalar s;
        s.insert({ep, em}, c);
        return s;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{0, 0});
    }
    GaussianRational constant_value() const {
        if (terms_.empty()) return GaussianRational(0);
        if (!is_constant()) throw std::domain_error("Scalar: not a constant");
        return terms_.begin()->second;
    }
    int degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        Scalar r = a;
        for (const auto& [m, c] : b.terms_) r.insert(m, c);
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        Scalar r = a;
        for (const auto& [m, c] : b.terms_) r.insert(m, -c);
        return r;
    }
    Scalar operator-() const {
        Scalar r;
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                r.insert({ma.ep + mb.ep, ma.em + mb.em}, ca * cb);
        return r;
    }
    friend Scalar operator*(const Scalar& a, const GaussianRational& c) {
        Scalar r;
        if (c.is_zero()) return r;
        for (const auto& [m, cc] : a.terms_) r.terms_.emplace(m, cc * c);
        return r;
    }
    friend Scalar operator*(const GaussianRational& c, const Scalar& a) { return a * c; }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar pow(int e) const {
        if (e < 0) throw std::invalid_argument("Scalar::pow: negative exponent");
        Scalar r = one(), b = *this;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

    GaussianRational evaluate(const Rational& sp, const Rational& sm) const {
        GaussianRational acc(0);
        for (const auto& [m, c] : terms_)
            acc += c * GaussianRational(rational_pow(sp, m.ep) * rational_pow(sm, m.em));
        return acc;
    }

    /// Substitutes numeric values for s+ and s-, returning a constant Scalar.
    Scalar substitute(const Rational& sp, const Rational& sm) const {
        return Scalar(evaluate(sp, sm));
    }

    void insert(const Monomial& m, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

  private:
    TermMap terms_;
};

/// Exact polynomial division; nullopt when den does not divide num.
inline std::optional<Scalar> divide_exact(const Scalar& num, const Scalar& den) {
    if (den.is_zero()) return std::nullopt;
    Scalar rem = num, quot;
    auto lead = [](const Scalar& s) { return std::prev(s.terms().end()); };
    const auto ld = lead(den);
    while (!rem.is_zero()) {
        const auto lr = lead(rem);
        if (lr->first.ep < ld->first.ep || lr->first.em < ld->first.em) return std::nullopt;
        Monomial q{lr->first.ep - ld->first.ep, lr->first.em - ld->first.em};
        GaussianRational qc = lr->second / ld->second;
        Scalar qterm = Scalar::monomial(q.ep, q.em, qc);
        quot += qterm;
        rem -= qterm * den;
    }
    return quot;
}

}  // namespace sticky
