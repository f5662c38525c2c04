#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sticky/ito_algebra.hpp"

namespace sticky {

/// Tensor monomial over an Ito algebra: a finite sequence of label indices.
/// The empty word is the unit direction (rank 0).
using Word = std::vector<int>;

inline Word word_append(Word w, int letter) {
    w.push_back(letter);
    return w;
}

/// Finitely supported Scalar-linear combination of words over one algebra.
/// Canonical form: no zero coefficients. Immutable value semantics; all
/// operations below are pure functions.
class TensorElement {
  public:
    using TermMap = std::map<Word, Scalar>;

    explicit TensorElement(AlgebraPtr alg) : alg_(std::move(alg)) {
        if (!alg_) throw std::invalid_argument("TensorElement: null algebra");
    }

    static TensorElement zero(AlgebraPtr alg) { return TensorElement(std::move(alg)); }
    static TensorElement unit(AlgebraPtr alg) {
        TensorElement t(std::move(alg));
        t.add_term(Word{}, Scalar::one());
        return t;
    }
    static TensorElement single(AlgebraPtr alg, Word w, Scalar c = Scalar::one()) {
        TensorElement t(std::move(alg));
        t.check_word(w);
        t.add_term(std::move(w), std::move(c));
        return t;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_rank() const {
        int r = 0;
        for (const auto& [w, c] : terms_) r = std::max(r, static_cast<int>(w.size()));
        return r;
    }

    Scalar coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar::zero() : it->second;
    }

    void add_term(Word w, Scalar c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(std::move(w), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend TensorElement operator+(const TensorElement& a, const TensorElement& b) {
        require_same(a, b);
        TensorElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, c);
        return r;
    }
    friend TensorElement operator-(const TensorElement& a, const TensorElement& b) {
        require_same(a, b);
        TensorElement r = a;
        for (const auto& [w, c] : b.terms_) r.add_term(w, -c);
        return r;
    }
    TensorElement operator-() const {
        TensorElement r(alg_);
        for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
        return r;
    }
    friend TensorElement operator*(const Scalar& c, const TensorElement& a) {
        TensorElement r(a.alg_);
        for (const auto& [w, cc] : a.terms_) r.add_term(w, cc * c);
        return r;
    }
    friend TensorElement operator*(const TensorElement& a, const Scalar& c) { return c * a; }

    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return same_algebra(a.alg_, b.alg_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const TensorElement& a, const TensorElement& b) { return !(a == b); }

    static void require_same(const TensorElement& a, const TensorElement& b) {
        if (!same_algebra(a.alg_, b.alg_))
            throw std::invalid_argument("tensor elements belong to different algebras");
    }

    void check_word(const Word& w) const {
        for (int l : w)
            if (l < 0 || l >= alg_->size())
                throw std::invalid_argument("word contains a label foreign to the algebra");
    }

  private:
    AlgebraPtr alg_;
    TermMap terms_;
};

namespace detail {

/// Product of two single words by the last-letter recursion. With use_table the
/// three-term sticky form; without it the plain two-term shuffle. Computed as a
/// dynamic program over prefix pairs.
inline TensorElement word_product(const AlgebraPtr& alg, const Word& u, const Word& v,
                                  bool use_table) {
    const size_t m = u.size(), n = v.size();
    std::vector<TensorElement> dp(
        (m + 1) * (n + 1), TensorElement::zero(alg));
    auto at = [&](size_t i, size_t j) -> TensorElement& { return dp[i * (n + 1) + j]; };
    at(0, 0) = TensorElement::unit(alg);
    for (size_t j = 1; j <= n; ++j)
        at(0, j) = TensorElement::single(alg, Word(v.begin(), v.begin() + static_cast<long>(j)));
    for (size_t i = 1; i <= m; ++i)
        at(i, 0) = TensorElement::single(alg, Word(u.begin(), u.begin() + static_cast<long>(i)));
    for (size_t i = 1; i <= m; ++i)
        for (size_t j = 1; j <= n; ++j) {
            TensorElement acc = TensorElement::zero(alg);
            for (const auto& [w, c] : at(i - 1, j).terms())
                acc.add_term(word_append(w, u[i - 1]), c);
            for (const auto& [w, c] : at(i, j - 1).terms())
                acc.add_term(word_append(w, v[j - 1]), c);
            if (use_table) {
                for (const auto& [l, cl] : alg->product(u[i - 1], v[j - 1]))
                    for (const auto& [w, c] : at(i - 1, j - 1).terms())
                        acc.add_term(word_append(w, l), c * cl);
            }
            at(i, j) = std::move(acc);
        }
    return at(m, n);
}

inline TensorElement bilinear_product(const TensorElement& x, const TensorElement& y,
                                      bool use_table) {
    TensorElement::require_same(x, y);
    TensorElement r = TensorElement::zero(x.algebra());
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) {
            const TensorElement p = word_product(x.algebra(), u, v, use_table);
            const Scalar c = cu * cv;
            for (const auto& [w, cw] : p.terms()) r.add_term(w, c * cw);
        }
    return r;
}

}  // namespace detail

/// Sticky shuffle product: shuffles plus the stick term that multiplies
/// coinciding letters through the Ito table.
inline TensorElement sticky_product(const TensorElement& x, const TensorElement& y) {
    return detail::bilinear_product(x, y, true);
}

/// Plain (nonsticky) shuffle product.
inline TensorElement shuffle_product(const TensorElement& x, const TensorElement& y) {
    return detail::bilinear_product(x, y, false);
}

inline TensorElement operator*(const TensorElement& x, const TensorElement& y) {
    return sticky_product(x, y);
}

/// Independent second implementation of the product: for each target rank N,
/// sum over ordered pairs (A,B) of subsets with A union B = {1..N}, merging
/// doubly occupied slots through the table. With sticky=false only disjoint
/// pairs contribute, which is the plain shuffle.
inline TensorElement sticky_product_subsets(const TensorElement& x, const TensorElement& y,
                                            bool sticky = true) {
    TensorElement::require_same(x, y);
    const AlgebraPtr& alg = x.algebra();
    TensorElement r = TensorElement::zero(alg);
    // slot tags: 0 = from x only, 1 = from y only, 2 = both (sticky merge)
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) {
            const int m = static_cast<int>(u.size()), n = static_cast<int>(v.size());
            const Scalar c = cu * cv;
            const int dmax = sticky ? std::min(m, n) : 0;
            for (int d = 0; d <= dmax; ++d) {
                const int N = m + n - d;
                std::vector<int> tags;
                tags.insert(tags.end(), static_cast<size_t>(m - d), 0);
                tags.insert(tags.end(), static_cast<size_t>(n - d), 1);
                tags.insert(tags.end(), static_cast<size_t>(d), 2);
                std::sort(tags.begin(), tags.end());
                do {
                    // Expand the tagged slot pattern into words; merged slots can
                    // split into several letters with scalar weights.
                    std::vector<std::pair<Word, Scalar>> partial{{Word{}, c}};
                    int iu = 0, iv = 0;
                    bool dead = false;
                    for (int p = 0; p < N && !dead; ++p) {
                        std::vector<std::pair<int, Scalar>> choices;
                        if (tags[static_cast<size_t>(p)] == 0) {
                            choices.emplace_back(u[static_cast<size_t>(iu++)], Scalar::one());
                        } else if (tags[static_cast<size_t>(p)] == 1) {
                            choices.emplace_back(v[static_cast<size_t>(iv++)], Scalar::one());
                        } else {
                            const LinComb& prod =
                                alg->product(u[static_cast<size_t>(iu++)], v[static_cast<size_t>(iv++)]);
                            for (const auto& [l, cl] : prod) choices.emplace_back(l, cl);
                        }
                        if (choices.empty()) {
                            dead = true;
                            break;
                        }
                        std::vector<std::pair<Word, Scalar>> next;
                        for (const auto& [w, cw] : partial)
                            for (const auto& [l, cl] : choices)
                                next.emplace_back(word_append(w, l), cw * cl);
                        partial = std::move(next);
                    }
                    if (!dead)
                        for (auto& [w, cw] : partial) r.add_term(std::move(w), cw);
                } while (std::next_permutation(tags.begin(), tags.end()));
            }
        }
    return r;
}

inline TensorElement power(const TensorElement& x, int n) {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    TensorElement r = TensorElement::unit(x.algebra());
    for (int k = 0; k < n; ++k) r = sticky_product(r, x);
    return r;
}

inline TensorElement component(const TensorElement& x, int rank) {
    TensorElement r = TensorElement::zero(x.algebra());
    for (const auto& [w, c] : x.terms())
        if (static_cast<int>(w.size()) == rank) r.add_term(w, c);
    return r;
}

/// Power with every term of rank above max_rank dropped after each factor.
/// Sound for extracting low-rank coefficients because the rank of a sticky
/// product is at least the rank of either factor.
inline TensorElement power_truncated(const TensorElement& x, int n, int max_rank) {
    if (n < 0) throw std::invalid_argument("power_truncated: negative exponent");
    auto truncate = [max_rank](const TensorElement& t) {
        TensorElement r = TensorElement::zero(t.algebra());
        for (const auto& [w, c] : t.terms())
            if (static_cast<int>(w.size()) <= max_rank) r.add_term(w, c);
        return r;
    };
    TensorElement r = truncate(TensorElement::unit(x.algebra()));
    const TensorElement xt = truncate(x);
    for (int k = 0; k < n; ++k) r = truncate(sticky_product(r, xt));
    return r;
}

/// Coefficient of the empty word.
inline Scalar counit(const TensorElement& x) { return x.coefficient(Word{}); }

/// Element of the N-th tensor power of T(L): Scalar combinations of N-tuples
/// of words, all over one algebra.
class MultiTensorElement {
  public:
    using Key = std::vector<Word>;
    using TermMap = std::map<Key, Scalar>;

    MultiTensorElement(AlgebraPtr alg, int arity) : alg_(std::move(alg)), arity_(arity) {
        if (!alg_) throw std::invalid_argument("MultiTensorElement: null algebra");
        if (arity_ < 1) throw std::invalid_argument("MultiTensorElement: arity must be >= 1");
    }

    static MultiTensorElement zero(AlgebraPtr alg, int arity) {
        return MultiTensorElement(std::move(alg), arity);
    }
    static MultiTensorElement unit(AlgebraPtr alg, int arity) {
        MultiTensorElement t(std::move(alg), arity);
        t.add_term(Key(static_cast<size_t>(arity)), Scalar::one());
        return t;
    }

    const AlgebraPtr& algebra() const { return alg_; }
    int arity() const { return arity_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar::zero() : it->second;
    }

    void add_term(Key k, Scalar c) {
        if (static_cast<int>(k.size()) != arity_)
            throw std::invalid_argument("MultiTensorElement: wrong arity key");
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiTensorElement operator+(const MultiTensorElement& a, const MultiTensorElement& b) {
        require_same(a, b);
        MultiTensorElement r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, c);
        return r;
    }
    friend MultiTensorElement operator-(const MultiTensorElement& a, const MultiTensorElement& b) {
        require_same(a, b);
        MultiTensorElement r = a;
        for (const auto& [k, c] : b.terms_) r.add_term(k, -c);
        return r;
    }
    friend MultiTensorElement operator*(const Scalar& c, const MultiTensorElement& a) {
        MultiTensorElement r(a.alg_, a.arity_);
        for (const auto& [k, cc] : a.terms_) r.add_term(k, cc * c);
        return r;
    }

    friend bool operator==(const MultiTensorElement& a, const MultiTensorElement& b) {
        return a.arity_ == b.arity_ && same_algebra(a.alg_, b.alg_) && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiTensorElement& a, const MultiTensorElement& b) {
        return !(a == b);
    }

    static void require_same(const MultiTensorElement& a, const MultiTensorElement& b) {
        if (a.arity_ != b.arity_)
            throw std::invalid_argument("multi tensor elements have different arity");
        if (!same_algebra(a.alg_, b.alg_))
            throw std::invalid_argument("multi tensor elements belong to different algebras");
    }

  private:
    AlgebraPtr alg_;
    int arity_;
    TermMap terms_;
};

/// Outer product of N single-slot elements into one arity-N element.
inline MultiTensorElement tensor_of(const std::vector<TensorElement>& slots) {
    if (slots.empty()) throw std::invalid_argument("tensor_of: need at least one slot");
    MultiTensorElement r = MultiTensorElement::unit(slots.front().algebra(),
                                                    static_cast<int>(slots.size()));
    for (size_t s = 0; s < slots.size(); ++s) {
        TensorElement::require_same(slots.front(), slots[s]);
        MultiTensorElement next =
            MultiTensorElement::zero(r.algebra(), r.arity());
        for (const auto& [k, c] : r.terms())
            for (const auto& [w, cw] : slots[s].terms()) {
                auto key = k;
                key[s] = w;
                next.add_term(std::move(key), c * cw);
            }
        r = std::move(next);
    }
    return r;
}

/// Deconcatenation coproduct, arity 2.
inline MultiTensorElement coproduct(const TensorElement& x) {
    MultiTensorElement r = MultiTensorElement::zero(x.algebra(), 2);
    for (const auto& [w, c] : x.terms()) {
        const size_t m = w.size();
        for (size_t j = 0; j <= m; ++j)
            r.add_term({Word(w.begin(), w.begin() + static_cast<long>(j)),
                        Word(w.begin() + static_cast<long>(j), w.end())},
                       c);
    }
    return r;
}

/// Iterated coproduct: each word split into N ordered, possibly empty blocks.
/// N = 1 is the identity embedding; the N = 0 case is the counit.
inline MultiTensorElement iterated_coproduct(const TensorElement& x, int arity) {
    if (arity < 1) throw std::invalid_argument("iterated_coproduct: arity must be >= 1");
    MultiTensorElement r = MultiTensorElement::zero(x.algebra(), arity);
    for (const auto& [w, c] : x.terms()) {
        const int m = static_cast<int>(w.size());
        std::vector<Word> blocks(static_cast<size_t>(arity));
        // cuts[0]=0 <= cuts[1] <= ... <= cuts[arity]=m
        std::vector<int> cuts(static_cast<size_t>(arity) + 1, 0);
        cuts.back() = m;
        auto emit = [&]() {
            for (int b = 0; b < arity; ++b)
                blocks[static_cast<size_t>(b)] =
                    Word(w.begin() + cuts[static_cast<size_t>(b)],
                         w.begin() + cuts[static_cast<size_t>(b) + 1]);
            r.add_term(blocks, c);
        };
        // enumerate nondecreasing interior cut positions
        auto rec = [&](auto&& self, int idx) -> void {
            if (idx == arity) {
                emit();
                return;
            }
            for (int p = cuts[static_cast<size_t>(idx) - 1]; p <= m; ++p) {
                cuts[static_cast<size_t>(idx)] = p;
                self(self, idx + 1);
            }
        };
        if (arity == 1) {
            emit();
        } else {
            rec(rec, 1);
        }
    }
    return r;
}

/// Slotwise sticky product on a tensor power, extended bilinearly.
inline MultiTensorElement multi_product(const MultiTensorElement& u, const MultiTensorElement& v) {
    MultiTensorElement::require_same(u, v);
    const AlgebraPtr& alg = u.algebra();
    const int arity = u.arity();
    MultiTensorElement r = MultiTensorElement::zero(alg, arity);
    for (const auto& [ku, cu] : u.terms())
        for (const auto& [kv, cv] : v.terms()) {
            std::vector<TensorElement> slot_products;
            slot_products.reserve(static_cast<size_t>(arity));
            bool dead = false;
            for (int s = 0; s < arity && !dead; ++s) {
                TensorElement p = detail::word_product(alg, ku[static_cast<size_t>(s)],
                                                       kv[static_cast<size_t>(s)], true);
                if (p.is_zero()) dead = true;
                slot_products.push_back(std::move(p));
            }
            if (dead) continue;
            std::vector<std::pair<std::vector<Word>, Scalar>> partial{{{}, cu * cv}};
            for (int s = 0; s < arity; ++s) {
                std::vector<std::pair<std::vector<Word>, Scalar>> next;
                for (const auto& [key, c] : partial)
                    for (const auto& [w, cw] : slot_products[static_cast<size_t>(s)].terms()) {
                        auto k2 = key;
                        k2.push_back(w);
                        next.emplace_back(std::move(k2), c * cw);
                    }
                partial = std::move(next);
            }
            for (auto& [key, c] : partial) r.add_term(std::move(key), c);
        }
    return r;
}

/// Restriction of the term map to keys of the given multirank.
inline MultiTensorElement multirank_component(const MultiTensorElement& u,
                                              const std::vector<int>& ranks) {
    if (static_cast<int>(ranks.size()) != u.arity())
        throw std::invalid_argument("multirank_component: wrong number of ranks");
    MultiTensorElement r = MultiTensorElement::zero(u.algebra(), u.arity());
    for (const auto& [k, c] : u.terms()) {
        bool match = true;
        for (size_t s = 0; s < k.size(); ++s)
            if (static_cast<int>(k[s].size()) != ranks[s]) {
                match = false;
                break;
            }
        if (match) r.add_term(k, c);
    }
    return r;
}

/// Antipode of the sticky shuffle Hopf algebra, built by rank induction from
/// the defining axiom  m (S x Id) Delta = unit . counit :
///   S(L1...Lm) = -sum_{j<m} S(L1...Lj) * {L(j+1)...Lm},  S(1) = 1.
inline TensorElement antipode(const TensorElement& x) {
    const AlgebraPtr& alg = x.algebra();
    TensorElement r = TensorElement::zero(alg);
    for (const auto& [w, c] : x.terms()) {
        const size_t m = w.size();
        std::vector<TensorElement> s_prefix;
        s_prefix.reserve(m + 1);
        s_prefix.push_back(TensorElement::unit(alg));
        for (size_t len = 1; len <= m; ++len) {
            TensorElement acc = TensorElement::zero(alg);
            for (size_t j = 0; j < len; ++j) {
                const TensorElement suffix = TensorElement::single(
                    alg, Word(w.begin() + static_cast<long>(j), w.begin() + static_cast<long>(len)));
                acc = acc + sticky_product(s_prefix[j], suffix);
            }
            s_prefix.push_back(-acc);
        }
        for (const auto& [sw, sc] : s_prefix[m].terms()) r.add_term(sw, c * sc);
    }
    return r;
}

}  // namespace sticky
