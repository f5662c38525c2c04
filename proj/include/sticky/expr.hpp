#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "sticky/tensor.hpp"

namespace sticky {

// Canonical text format, round-trippable through parse_element:
//   words      dX*dY*dT          (empty word renders as {})
//   terms      2*{dX*dX}, 1/2 s+^2*{dT}, (1/2 + 3/4 i) s+ s-*{}
//   elements   terms joined with " + " / " - ", highest-degree scalar first

namespace detail {

struct ScalarTermParts {
    bool negative = false;
    std::string magnitude;  // without sign; empty means coefficient 1
};

inline std::string monomial_suffix(const Monomial& m) {
    std::string s;
    auto var = [&](const char* sym, int e) {
        if (e == 0) return;
        if (!s.empty()) s += ' ';
        s += sym;
        if (e > 1) s += "^" + std::to_string(e);
    };
    var("s+", m.ep);
    var("s-", m.em);
    return s;
}

inline ScalarTermParts scalar_term_parts(const Monomial& m, const GaussianRational& c) {
    ScalarTermParts out;
    GaussianRational mag = c;
    std::string coef;
    if (c.im == 0) {
        out.negative = c.re < 0;
        if (out.negative) mag.re = -mag.re;
        if (!(mag.re == 1 && m.degree() > 0)) coef = rational_to_string(mag.re);
    } else if (c.re == 0) {
        out.negative = c.im < 0;
        if (out.negative) mag.im = -mag.im;
        coef = mag.im == 1 ? "i" : rational_to_string(mag.im) + " i";
    } else {
        coef = "(" + rational_to_string(c.re) + (c.im < 0 ? " - " : " + ") +
               rational_to_string(c.im < 0 ? Rational(-c.im) : c.im) + " i)";
    }
    const std::string suffix = monomial_suffix(m);
    out.magnitude = coef;
    if (!suffix.empty()) {
        if (!out.magnitude.empty()) out.magnitude += ' ';
        out.magnitude += suffix;
    }
    return out;
}

inline std::string join_terms(const std::vector<ScalarTermParts>& parts) {
    if (parts.empty()) return "0";
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i == 0) {
            if (parts[i].negative) s += '-';
        } else {
            s += parts[i].negative ? " - " : " + ";
        }
        s += parts[i].magnitude;
    }
    return s;
}

}  // namespace detail

inline std::string scalar_to_string(const Scalar& s) {
    std::vector<detail::ScalarTermParts> parts;
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it)
        parts.push_back(detail::scalar_term_parts(it->first, it->second));
    return detail::join_terms(parts);
}

inline std::string word_to_string(const ItoAlgebra& alg, const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += alg.label_name(w[i]);
    }
    return s;
}

inline std::string element_to_string(const TensorElement& x) {
    const ItoAlgebra& alg = *x.algebra();
    std::vector<detail::ScalarTermParts> parts;
    for (const auto& [w, c] : x.terms()) {
        const std::string braces = "{" + word_to_string(alg, w) + "}";
        for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
            auto p = detail::scalar_term_parts(it->first, it->second);
            if (p.magnitude == "1") {
                p.magnitude = braces;
            } else {
                p.magnitude += "*" + braces;
            }
            parts.push_back(std::move(p));
        }
    }
    return detail::join_terms(parts);
}

inline std::string lincomb_to_string(const ItoAlgebra& alg, const LinComb& lc) {
    std::vector<detail::ScalarTermParts> parts;
    for (const auto& [l, c] : lc) {
        const std::string label = alg.label_name(l);
        for (auto it = c.terms().rbegin(); it != c.terms().rend(); ++it) {
            auto p = detail::scalar_term_parts(it->first, it->second);
            if (p.magnitude == "1") {
                p.magnitude = label;
            } else {
                p.magnitude += " " + label;
            }
            parts.push_back(std::move(p));
        }
    }
    return detail::join_terms(parts);
}

namespace detail {

class ExprParser {
  public:
    ExprParser(std::string_view text, AlgebraPtr alg) : text_(text), alg_(std::move(alg)) {}

    TensorElement parse_element() {
        TensorElement acc = TensorElement::zero(alg_);
        skip_ws();
        if (eof()) throw std::invalid_argument("expression: empty input");
        bool negative = consume_sign();
        for (;;) {
            acc = acc + parse_term(negative);
            skip_ws();
            if (eof()) break;
            if (peek() == '+' || peek() == '-') {
                negative = get() == '-';
                continue;
            }
            throw error("expected '+', '-' or end of input");
        }
        return acc;
    }

  private:
    std::string_view text_;
    size_t pos_ = 0;
    AlgebraPtr alg_;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    char get() { return text_[pos_++]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    std::invalid_argument error(const std::string& msg) const {
        return std::invalid_argument("expression: " + msg + " at position " + std::to_string(pos_));
    }
    bool consume_sign() {
        skip_ws();
        if (!eof() && (peek() == '+' || peek() == '-')) return get() == '-';
        return false;
    }

    Rational parse_number() {
        skip_ws();
        size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw error("expected a number");
        Int num{std::string(text_.substr(start, pos_ - start))};
        skip_ws();
        if (!eof() && peek() == '/') {
            ++pos_;
            skip_ws();
            size_t dstart = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (dstart == pos_) throw error("expected a denominator");
            Int den{std::string(text_.substr(dstart, pos_ - dstart))};
            if (den == 0) throw error("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    std::string parse_identifier() {
        skip_ws();
        size_t start = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        if (start == pos_) throw error("expected an identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    // (re), (re + im i), (re - im i)
    GaussianRational parse_complex_parens() {
        skip_ws();
        if (eof() || get() != '(') throw error("expected '('");
        bool neg_re = consume_sign();
        Rational re = parse_number();
        if (neg_re) re = -re;
        GaussianRational c{re, Rational(0)};
        skip_ws();
        if (!eof() && (peek() == '+' || peek() == '-')) {
            const bool neg_im = get() == '-';
            skip_ws();
            Rational im;
            if (!eof() && peek() == 'i') {
                im = 1;
            } else {
                im = parse_number();
            }
            skip_ws();
            if (eof() || get() != 'i') throw error("expected 'i'");
            c.im = neg_im ? Rational(-im) : im;
        }
        skip_ws();
        if (eof() || get() != ')') throw error("expected ')'");
        return c;
    }

    // One scalar factor starting at the cursor, or nullopt when the cursor
    // does not start a scalar factor.
    bool try_parse_scalar_factor(Scalar& coef) {
        skip_ws();
        if (eof()) return false;
        const char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            coef *= Scalar(parse_number());
            return true;
        }
        if (ch == '(') {
            coef *= Scalar(parse_complex_parens());
            return true;
        }
        if (ch == 'i' && !is_identifier_continuation(1)) {
            ++pos_;
            coef *= Scalar(GaussianRational::i());
            return true;
        }
        if (ch == 's' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '+' || text_[pos_ + 1] == '-')) {
            const bool plus = text_[pos_ + 1] == '+';
            pos_ += 2;
            int e = 1;
            skip_ws();
            if (!eof() && peek() == '^') {
                ++pos_;
                const Rational r = parse_number();
                if (boost::multiprecision::denominator(r) != 1)
                    throw error("exponent must be an integer");
                e = static_cast<int>(boost::multiprecision::numerator(r));
            }
            coef *= plus ? Scalar::monomial(e, 0, 1) : Scalar::monomial(0, e, 1);
            return true;
        }
        return false;
    }

    bool is_identifier_continuation(size_t offset) const {
        const size_t p = pos_ + offset;
        if (p >= text_.size()) return false;
        return std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_';
    }

    TensorElement parse_term(bool negative) {
        Scalar coef = Scalar::one();
        bool saw_scalar = false;
        while (try_parse_scalar_factor(coef)) saw_scalar = true;
        skip_ws();
        bool saw_word = false;
        Word word;
        if (!eof() && (peek() == '*' || peek() == '{')) {
            if (peek() == '*') {
                ++pos_;
                skip_ws();
            }
            if (eof() || get() != '{') throw error("expected '{'");
            skip_ws();
            while (!eof() && peek() != '}') {
                word.push_back(alg_->require_label(parse_identifier()));
                skip_ws();
                if (!eof() && peek() == '*') {
                    ++pos_;
                    skip_ws();
                }
            }
            if (eof() || get() != '}') throw error("unterminated word");
            saw_word = true;
        }
        if (!saw_scalar && !saw_word) throw error("expected a term");
        if (negative) coef = -coef;
        return TensorElement::single(alg_, std::move(word), std::move(coef));
    }
};

}  // namespace detail

/// Parses the CLI text format over the given algebra.
inline TensorElement parse_element(std::string_view text, AlgebraPtr alg) {
    return detail::ExprParser(text, std::move(alg)).parse_element();
}

inline Scalar parse_scalar(std::string_view text) {
    // Reuse the element parser over a dummy algebra; only rank-0 terms allowed.
    static const AlgebraPtr dummy = builtin_algebra(Builtin::Classical1d);
    const TensorElement e = parse_element(text, dummy);
    for (const auto& [w, c] : e.terms())
        if (!w.empty()) throw std::invalid_argument("expected a scalar, found a word");
    return counit(e);
}

}  // namespace sticky
