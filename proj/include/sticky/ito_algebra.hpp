#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sticky/scalar.hpp"

namespace sticky {

/// Linear combination of basis differentials, keyed by label index.
using LinComb = std::map<int, Scalar>;

inline void lincomb_add(LinComb& dst, int label, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = dst.find(label);
    if (it == dst.end()) {
        dst.emplace(label, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) dst.erase(it);
    }
}

inline LinComb lincomb_scale(const LinComb& a, const Scalar& c) {
    LinComb r;
    if (c.is_zero()) return r;
    for (const auto& [l, s] : a) lincomb_add(r, l, s * c);
    return r;
}

struct DifferentialLabel {
    std::string name;
    int index = 0;

    friend bool operator==(const DifferentialLabel& a, const DifferentialLabel& b) {
        return a.name == b.name && a.index == b.index;
    }
};

/// Finite-dimensional algebra of stochastic differentials: a named basis with a
/// distinguished time symbol and a bilinear multiplication table. Values are
/// immutable after construction.
class ItoAlgebra {
  public:
    ItoAlgebra(std::vector<std::string> labels, std::string_view time_name,
               std::map<std::pair<int, int>, LinComb> table)
        : labels_(std::move(labels)) {
        const int n = static_cast<int>(labels_.size());
        if (n == 0) throw std::invalid_argument("ItoAlgebra: empty basis");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (labels_[i] == labels_[j])
                    throw std::invalid_argument("ItoAlgebra: duplicate label " + labels_[i]);
        time_index_ = -1;
        for (int i = 0; i < n; ++i)
            if (labels_[i] == time_name) time_index_ = i;
        if (time_index_ < 0)
            throw std::invalid_argument("ItoAlgebra: time symbol '" + std::string(time_name) +
                                        "' not among labels");
        table_.assign(static_cast<size_t>(n) * n, LinComb{});
        for (auto& [key, value] : table) {
            auto [i, j] = key;
            if (i < 0 || i >= n || j < 0 || j >= n)
                throw std::invalid_argument("ItoAlgebra: table entry out of range");
            for (const auto& [l, c] : value)
                if (l < 0 || l >= n)
                    throw std::invalid_argument("ItoAlgebra: table result label out of range");
            LinComb cleaned;
            for (const auto& [l, c] : value) lincomb_add(cleaned, l, c);
            table_[static_cast<size_t>(i) * n + j] = std::move(cleaned);
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label_name(int i) const { return labels_.at(static_cast<size_t>(i)); }
    DifferentialLabel label(int i) const { return {label_name(i), i}; }
    int time_index() const { return time_index_; }
    bool is_time(int i) const { return i == time_index_; }

    std::optional<int> find_label(std::string_view name) const {
        for (int i = 0; i < size(); ++i)
            if (labels_[static_cast<size_t>(i)] == name) return i;
        return std::nullopt;
    }
    int require_label(std::string_view name) const {
        auto i = find_label(name);
        if (!i) throw std::invalid_argument("unknown label '" + std::string(name) + "'");
        return *i;
    }

    /// Product of basis elements i*j as a linear combination; empty means zero.
    const LinComb& product(int i, int j) const {
        if (i < 0 || i >= size() || j < 0 || j >= size())
            throw std::invalid_argument("ItoAlgebra::product: label index out of range");
        return table_[static_cast<size_t>(i) * size() + j];
    }

    bool time_is_annihilating() const {
        for (int i = 0; i < size(); ++i)
            if (!product(i, time_index_).empty() || !product(time_index_, i).empty()) return false;
        return true;
    }

    friend bool operator==(const ItoAlgebra& a, const ItoAlgebra& b) {
        return a.labels_ == b.labels_ && a.time_index_ == b.time_index_ && a.table_ == b.table_;
    }
    friend bool operator!=(const ItoAlgebra& a, const ItoAlgebra& b) { return !(a == b); }

  private:
    std::vector<std::string> labels_;
    int time_index_;
    std::vector<LinComb> table_;  // row-major, [i*n+j] = product of i and j
};

using AlgebraPtr = std::shared_ptr<const ItoAlgebra>;

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    return a == b || (a && b && *a == *b);
}

/// Bilinear extension of the table to linear combinations.
inline LinComb multiply(const ItoAlgebra& alg, const LinComb& a, const LinComb& b) {
    LinComb r;
    for (const auto& [i, ca] : a)
        for (const auto& [j, cb] : b) {
            const Scalar c = ca * cb;
            for (const auto& [l, cl] : alg.product(i, j)) lincomb_add(r, l, c * cl);
        }
    return r;
}

enum class Builtin {
    Classical1d,
    ClassicalPlanar,
    QuantumPQ,
    ClassicalZ,
    QuantumA,
    QuantumPQhat,
    QuantumAhat,
};

inline const std::vector<std::pair<std::string, Builtin>>& builtin_names() {
    static const std::vector<std::pair<std::string, Builtin>> names = {
        {"classical1d", Builtin::Classical1d}, {"classicalPlanar", Builtin::ClassicalPlanar},
        {"quantumPQ", Builtin::QuantumPQ},     {"classicalZ", Builtin::ClassicalZ},
        {"quantumA", Builtin::QuantumA},       {"quantumPQhat", Builtin::QuantumPQhat},
        {"quantumAhat", Builtin::QuantumAhat},
    };
    return names;
}

inline std::string builtin_name_list() {
    std::string s;
    for (const auto& [n, b] : builtin_names()) {
        if (!s.empty()) s += ", ";
        s += n;
    }
    return s;
}

inline bool builtin_needs_sigma(Builtin which) {
    return which == Builtin::QuantumPQ || which == Builtin::QuantumA ||
           which == Builtin::QuantumPQhat;
}

/// The built-in multiplication tables. The three sigma-dependent tables carry
/// the exact rational value sigma^2 >= 1 in their coefficients; quantumAhat is
/// symbolic in s+ and s-.
inline AlgebraPtr builtin_algebra(Builtin which, std::optional<Rational> sigma_squared = {}) {
    using T = std::map<std::pair<int, int>, LinComb>;
    const GaussianRational I = GaussianRational::i();
    Rational s2{0};
    if (builtin_needs_sigma(which)) {
        if (!sigma_squared)
            throw std::invalid_argument("this algebra needs an exact rational value of sigma");
        s2 = *sigma_squared;
        if (s2 < 1) throw std::invalid_argument("sigma must satisfy sigma >= 1");
    }
    std::shared_ptr<ItoAlgebra> alg;
    switch (which) {
        case Builtin::Classical1d: {
            T t;
            t[{0, 0}] = {{1, Scalar::one()}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dX", "dT"}, "dT",
                                               std::move(t));
            break;
        }
        case Builtin::ClassicalPlanar: {
            T t;
            t[{0, 0}] = {{2, Scalar::one()}};
            t[{1, 1}] = {{2, Scalar::one()}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dX", "dY", "dT"}, "dT",
                                               std::move(t));
            break;
        }
        case Builtin::QuantumPQ: {
            T t;
            t[{0, 0}] = {{2, Scalar(s2)}};
            t[{0, 1}] = {{2, Scalar(-I)}};
            t[{1, 0}] = {{2, Scalar(I)}};
            t[{1, 1}] = {{2, Scalar(s2)}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dP", "dQ", "dT"}, "dT",
                                               std::move(t));
            break;
        }
        case Builtin::ClassicalZ: {
            T t;
            t[{0, 1}] = {{2, Scalar(Rational(1, 2))}};
            t[{1, 0}] = {{2, Scalar(Rational(1, 2))}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dZ", "dZbar", "dT"}, "dT",
                                               std::move(t));
            break;
        }
        case Builtin::QuantumA: {
            T t;
            t[{0, 1}] = {{2, Scalar(Rational(1, 2) * (s2 + 1))}};
            t[{1, 0}] = {{2, Scalar(Rational(1, 2) * (s2 - 1))}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dA", "dAdag", "dT"}, "dT",
                                               std::move(t));
            break;
        }
        case Builtin::QuantumPQhat: {
            const Rational is2 = 1 / s2;
            T t;
            t[{0, 0}] = {{2, Scalar::one()}};
            t[{0, 1}] = {{2, Scalar(-I * GaussianRational(is2))}};
            t[{1, 0}] = {{2, Scalar(I * GaussianRational(is2))}};
            t[{1, 1}] = {{2, Scalar::one()}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dPhat", "dQhat", "dT"},
                                               "dT", std::move(t));
            break;
        }
        case Builtin::QuantumAhat: {
            T t;
            t[{0, 1}] = {{2, Scalar::sigma_plus()}};
            t[{1, 0}] = {{2, Scalar::sigma_minus()}};
            alg = std::make_shared<ItoAlgebra>(std::vector<std::string>{"dAhat", "dAhatDag", "dT"},
                                               "dT", std::move(t));
            break;
        }
    }
    if (!alg->time_is_annihilating())
        throw std::logic_error("builtin table does not annihilate time");
    return alg;
}

inline AlgebraPtr builtin_algebra(std::string_view name, std::optional<Rational> sigma_squared = {}) {
    for (const auto& [n, b] : builtin_names())
        if (n == name) return builtin_algebra(b, std::move(sigma_squared));
    throw std::invalid_argument("unknown algebra '" + std::string(name) +
                                "'; valid names: " + builtin_name_list());
}

namespace detail {

// Unreduced fraction of Scalars, enough for exact Gauss-Jordan elimination.
struct ScalarFrac {
    Scalar num = Scalar::zero();
    Scalar den = Scalar::one();

    static ScalarFrac of(const Scalar& s) { return {s, Scalar::one()}; }
    bool is_zero() const { return num.is_zero(); }
    friend ScalarFrac operator+(const ScalarFrac& a, const ScalarFrac& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend ScalarFrac operator-(const ScalarFrac& a, const ScalarFrac& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend ScalarFrac operator*(const ScalarFrac& a, const ScalarFrac& b) {
        return {a.num * b.num, a.den * b.den};
    }
    friend ScalarFrac operator/(const ScalarFrac& a, const ScalarFrac& b) {
        if (b.is_zero()) throw std::domain_error("ScalarFrac: division by zero");
        return {a.num * b.den, a.den * b.num};
    }
};

}  // namespace detail

/// Rewrites the multiplication table of `alg` in the basis given by `rows`,
/// where rows[i] expresses the i-th new basis element over the old labels.
/// The time symbol must map to itself and the matrix must be invertible.
inline AlgebraPtr change_of_basis(const ItoAlgebra& alg, const std::vector<LinComb>& rows,
                                  const std::vector<std::string>& names) {
    using detail::ScalarFrac;
    const int n = alg.size();
    if (static_cast<int>(rows.size()) != n || static_cast<int>(names.size()) != n)
        throw std::invalid_argument("change_of_basis: matrix must be square over the basis");
    for (const auto& row : rows)
        for (const auto& [l, c] : row)
            if (l < 0 || l >= n) throw std::invalid_argument("change_of_basis: label out of range");

    int new_time = -1;
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<size_t>(i)];
        if (row.size() == 1 && row.count(alg.time_index()) &&
            row.at(alg.time_index()) == Scalar::one()) {
            new_time = i;
            break;
        }
    }
    if (new_time < 0)
        throw std::invalid_argument("change_of_basis: time symbol must map to itself");

    // Invert the basis matrix by Gauss-Jordan over fractions of Scalars.
    std::vector<std::vector<ScalarFrac>> m(static_cast<size_t>(n)),
        inv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)].assign(static_cast<size_t>(n), ScalarFrac{});
        inv[static_cast<size_t>(i)].assign(static_cast<size_t>(n), ScalarFrac{});
        inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = ScalarFrac::of(Scalar::one());
        for (const auto& [l, c] : rows[static_cast<size_t>(i)])
            m[static_cast<size_t>(i)][static_cast<size_t>(l)] = ScalarFrac::of(c);
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (!m[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw std::invalid_argument("change_of_basis: matrix is singular");
        std::swap(m[static_cast<size_t>(pivot)], m[static_cast<size_t>(col)]);
        std::swap(inv[static_cast<size_t>(pivot)], inv[static_cast<size_t>(col)]);
        const ScalarFrac p = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        for (int c = 0; c < n; ++c) {
            m[static_cast<size_t>(col)][static_cast<size_t>(c)] =
                m[static_cast<size_t>(col)][static_cast<size_t>(c)] / p;
            inv[static_cast<size_t>(col)][static_cast<size_t>(c)] =
                inv[static_cast<size_t>(col)][static_cast<size_t>(c)] / p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const ScalarFrac f = m[static_cast<size_t>(r)][static_cast<size_t>(col)];
            if (f.is_zero()) continue;
            for (int c = 0; c < n; ++c) {
                m[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    m[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(c)];
                inv[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                    inv[static_cast<size_t>(r)][static_cast<size_t>(c)] -
                    f * inv[static_cast<size_t>(col)][static_cast<size_t>(c)];
            }
        }
    }

    std::map<std::pair<int, int>, LinComb> table;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const LinComb old =
                multiply(alg, rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
            if (old.empty()) continue;
            LinComb entry;
            for (int l = 0; l < n; ++l) {
                ScalarFrac acc{};
                for (const auto& [k, c] : old)
                    acc = acc + ScalarFrac::of(c) * inv[static_cast<size_t>(k)][static_cast<size_t>(l)];
                if (acc.is_zero()) continue;
                auto q = divide_exact(acc.num, acc.den);
                if (!q)
                    throw std::invalid_argument(
                        "change_of_basis: table entry is not polynomial in the new basis");
                lincomb_add(entry, l, *q);
            }
            if (!entry.empty()) table[{i, j}] = std::move(entry);
        }
    return std::make_shared<ItoAlgebra>(names, names[static_cast<size_t>(new_time)],
                                        std::move(table));
}

/// Substitutes numeric values for s+ and s- in every table coefficient.
inline AlgebraPtr evaluate_algebra(const ItoAlgebra& alg, const Rational& sp, const Rational& sm) {
    std::map<std::pair<int, int>, LinComb> table;
    for (int i = 0; i < alg.size(); ++i)
        for (int j = 0; j < alg.size(); ++j) {
            LinComb entry;
            for (const auto& [l, c] : alg.product(i, j)) lincomb_add(entry, l, c.substitute(sp, sm));
            if (!entry.empty()) table[{i, j}] = std::move(entry);
        }
    return std::make_shared<ItoAlgebra>(alg.labels(), alg.label_name(alg.time_index()),
                                        std::move(table));
}

inline AlgebraPtr rename_labels(const ItoAlgebra& alg, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != alg.size())
        throw std::invalid_argument("rename_labels: wrong number of names");
    std::map<std::pair<int, int>, LinComb> table;
    for (int i = 0; i < alg.size(); ++i)
        for (int j = 0; j < alg.size(); ++j)
            if (!alg.product(i, j).empty()) table[{i, j}] = alg.product(i, j);
    return std::make_shared<ItoAlgebra>(names, names[static_cast<size_t>(alg.time_index())],
                                        std::move(table));
}

}  // namespace sticky
