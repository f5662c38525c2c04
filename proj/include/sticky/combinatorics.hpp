#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sticky/rational.hpp"

namespace sticky {

/// Bijection on {1..n}, 1-indexed to match the usual cycle notation.
class Permutation {
  public:
    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        const int n = size();
        std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
        for (int v : img_) {
            if (v < 1 || v > n || seen[static_cast<size_t>(v)])
                throw std::invalid_argument("Permutation: not a bijection on {1..n}");
            seen[static_cast<size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(static_cast<size_t>(n));
        std::iota(im.begin(), im.end(), 1);
        return Permutation(std::move(im));
    }

    /// Builds the permutation with the single given cycle, fixing the rest.
    static Permutation from_cycle(const std::vector<int>& cycle, int n) {
        auto p = identity(n).img_;
        for (size_t i = 0; i < cycle.size(); ++i) {
            int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
            if (from < 1 || from > n) throw std::invalid_argument("from_cycle: value out of range");
            p[static_cast<size_t>(from) - 1] = to;
        }
        return Permutation(std::move(p));
    }

    int size() const { return static_cast<int>(img_.size()); }
    int operator()(int j) const { return img_.at(static_cast<size_t>(j) - 1); }
    const std::vector<int>& images() const { return img_; }

    Permutation inverse() const {
        std::vector<int> inv(img_.size());
        for (int j = 1; j <= size(); ++j) inv[static_cast<size_t>((*this)(j)) - 1] = j;
        return Permutation(std::move(inv));
    }

    /// Cycle decomposition, each cycle led by its smallest element, cycles
    /// ordered by leader.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(img_.size() + 1, 0);
        for (int j = 1; j <= size(); ++j) {
            if (seen[static_cast<size_t>(j)]) continue;
            std::vector<int> cyc;
            int x = j;
            while (!seen[static_cast<size_t>(x)]) {
                seen[static_cast<size_t>(x)] = 1;
                cyc.push_back(x);
                x = (*this)(x);
            }
            out.push_back(std::move(cyc));
        }
        return out;
    }

    bool is_fixed_point_free() const {
        for (int j = 1; j <= size(); ++j)
            if ((*this)(j) == j) return false;
        return true;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

  private:
    std::vector<int> img_;
};

/// One-line notation: "[4,1,8,2,6,7,5,3]".
inline std::string permutation_to_string(const Permutation& p) {
    std::string s = "[";
    for (int j = 1; j <= p.size(); ++j) {
        if (j > 1) s += ",";
        s += std::to_string(p(j));
    }
    return s + "]";
}

inline Permutation parse_permutation(std::string_view text) {
    std::string s(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw std::invalid_argument("parse_permutation: expected [a,b,...]");
    std::vector<int> im;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string tok;
    while (std::getline(ss, tok, ',')) im.push_back(std::stoi(tok));
    return Permutation(std::move(im));
}

/// des(h,k): 1 when h > k, else 0 (including h = k).
inline int des_pair(int h, int k) { return h > k ? 1 : 0; }

/// Number of descents of a nonempty sequence of distinct integers.
inline int des(const std::vector<int>& seq) {
    if (seq.empty()) throw std::invalid_argument("des: empty sequence");
    int d = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i) d += des_pair(seq[i], seq[i + 1]);
    return d;
}

/// Cyclic descents: descents of the sequence followed by its first element.
inline int cdes(const std::vector<int>& seq) {
    if (seq.empty()) throw std::invalid_argument("cdes: empty sequence");
    return des(seq) + des_pair(seq.back(), seq.front());
}

/// sn = product over j of (-1)^{des(j, s(j))}.
inline int sign_sn(const Permutation& s) {
    int e = 0;
    for (int j = 1; j <= s.size(); ++j) e += des_pair(j, s(j));
    return e % 2 == 0 ? 1 : -1;
}

inline bool is_alternating(const std::vector<int>& seq, bool start_down) {
    if (seq.size() <= 1) return true;
    bool down = start_down;
    for (size_t i = 0; i + 1 < seq.size(); ++i) {
        if (down ? !(seq[i] > seq[i + 1]) : !(seq[i] < seq[i + 1])) return false;
        down = !down;
    }
    return true;
}

inline bool is_zigzag(const std::vector<int>& seq) { return is_alternating(seq, true); }
inline bool is_zagzig(const std::vector<int>& seq) { return is_alternating(seq, false); }
inline bool is_zigzag(const Permutation& s) { return is_zigzag(s.images()); }
inline bool is_zagzig(const Permutation& s) { return is_zagzig(s.images()); }

/// Euler zigzag numbers A_0..A_max via the Seidel-Entringer boustrophedon
/// recurrence E(n,k) = E(n,k-1) + E(n-1,n-k), A_n = E(n,n).
inline std::vector<Int> zigzag_numbers(int max_n) {
    if (max_n < 0) throw std::invalid_argument("zigzag_numbers: negative bound");
    std::vector<Int> a{1};
    std::vector<Int> prev{1};
    for (int n = 1; n <= max_n; ++n) {
        std::vector<Int> row(static_cast<size_t>(n) + 1, 0);
        for (int k = 1; k <= n; ++k)
            row[static_cast<size_t>(k)] =
                row[static_cast<size_t>(k) - 1] + prev[static_cast<size_t>(n - k)];
        a.push_back(row.back());
        prev = std::move(row);
    }
    return a;
}

inline Int zigzag_count(int n) { return zigzag_numbers(n).back(); }

/// Visits the permutations of {1..n} in lexicographic order.
template <typename Fn>
void for_each_permutation(int n, Fn&& fn) {
    if (n < 0) throw std::invalid_argument("for_each_permutation: negative n");
    std::vector<int> im(static_cast<size_t>(n));
    std::iota(im.begin(), im.end(), 1);
    do {
        fn(static_cast<const std::vector<int>&>(im));
    } while (std::next_permutation(im.begin(), im.end()));
}

/// Forth-back condition: every point is above or below both its image and its
/// preimage.
inline bool is_forth_back(const Permutation& s) {
    const Permutation inv = s.inverse();
    for (int j = 1; j <= s.size(); ++j) {
        const int a = inv(j), b = s(j);
        if (!((a < j && j > b) || (a > j && j < b))) return false;
    }
    return true;
}

/// Count of forth-back permutations in S_n by direct enumeration.
inline Int forth_back_count(int n) {
    if (n < 0) throw std::invalid_argument("forth_back_count: negative n");
    if (n % 2 == 1) return 0;
    if (n > 12) throw std::invalid_argument("forth_back_count: enumeration beyond n=12 refused");
    Int count = 0;
    for_each_permutation(n, [&](const std::vector<int>& im) {
        if (is_forth_back(Permutation(im))) ++count;
    });
    return count;
}

/// Canonical cycle form: each cycle led by its largest element, cycles ordered
/// by increasing leader.
inline std::vector<std::vector<int>> canonical_cycles_by_max(const Permutation& s) {
    auto cycles = s.cycles();
    for (auto& cyc : cycles) {
        auto it = std::max_element(cyc.begin(), cyc.end());
        std::rotate(cyc.begin(), it, cyc.end());
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return cycles;
}

/// The transformation fondamentale: canonical cycle form with brackets
/// dropped. Maps forth-back permutations bijectively onto zigzag ones.
inline Permutation fundamental_transform(const Permutation& s) {
    if (!is_forth_back(s))
        throw std::invalid_argument("fundamental_transform: input is not forth-back");
    std::vector<int> flat;
    for (const auto& cyc : canonical_cycles_by_max(s))
        flat.insert(flat.end(), cyc.begin(), cyc.end());
    return Permutation(std::move(flat));
}

/// Inverse of the fundamental transform: cut the one-line form before each
/// left-to-right record exceeding the current cycle leader.
inline Permutation inverse_fundamental_transform(const Permutation& zig) {
    if (!is_zigzag(zig))
        throw std::invalid_argument("inverse_fundamental_transform: input is not zigzag");
    const auto& seq = zig.images();
    const int n = zig.size();
    std::vector<int> im(static_cast<size_t>(n));
    size_t start = 0;
    while (start < seq.size()) {
        size_t end = start + 1;
        while (end < seq.size() && seq[end] < seq[start]) ++end;
        for (size_t i = start; i < end; ++i) {
            const int from = seq[i];
            const int to = seq[i + 1 < end ? i + 1 : start];
            im[static_cast<size_t>(from) - 1] = to;
        }
        start = end;
    }
    return Permutation(std::move(im));
}

/// Cyclic forth-back permutations of S_{2m} map to zagzig permutations of
/// S_{2m-1}: rotate the cycle to end at 2m and drop that entry.
inline Permutation cyclic_forth_back_to_zagzig(const Permutation& s) {
    if (!is_forth_back(s))
        throw std::invalid_argument("cyclic_forth_back_to_zagzig: input is not forth-back");
    auto cycles = s.cycles();
    if (cycles.size() != 1)
        throw std::invalid_argument("cyclic_forth_back_to_zagzig: input is not cyclic");
    const int n = s.size();
    std::vector<int> seq;
    int x = s(n);
    while (x != n) {
        seq.push_back(x);
        x = s(x);
    }
    return Permutation(std::move(seq));
}

/// Nondecreasing positive cycle lengths / partition parts.
class CycleType {
  public:
    explicit CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("CycleType: empty");
        for (int p : parts_)
            if (p < 1) throw std::invalid_argument("CycleType: parts must be positive");
        if (!std::is_sorted(parts_.begin(), parts_.end()))
            throw std::invalid_argument("CycleType: parts must be nondecreasing");
    }

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int block_count() const { return static_cast<int>(parts_.size()); }
    bool all_even() const {
        return std::all_of(parts_.begin(), parts_.end(), [](int p) { return p % 2 == 0; });
    }
    bool all_at_least(int k) const {
        return std::all_of(parts_.begin(), parts_.end(), [k](int p) { return p >= k; });
    }

    /// Product of the factorials of the multiplicities of the distinct parts.
    Int multiplicity_factorial() const {
        Int r = 1;
        size_t i = 0;
        while (i < parts_.size()) {
            size_t j = i;
            while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
            r *= factorial(static_cast<int>(j - i));
            i = j;
        }
        return r;
    }

    friend bool operator==(const CycleType& a, const CycleType& b) { return a.parts_ == b.parts_; }
    friend bool operator<(const CycleType& a, const CycleType& b) { return a.parts_ < b.parts_; }

  private:
    std::vector<int> parts_;
};

inline CycleType cycle_type_of(const Permutation& s) {
    std::vector<int> t;
    for (const auto& cyc : s.cycles()) t.push_back(static_cast<int>(cyc.size()));
    std::sort(t.begin(), t.end());
    return CycleType(std::move(t));
}

inline Int multinomial(const CycleType& t) {
    Int r = factorial(t.n());
    for (int p : t.parts()) r /= factorial(p);
    return r;
}

/// Number of unordered set partitions of {1..n} with the given block sizes.
inline Int set_partition_count(const CycleType& t) {
    return multinomial(t) / t.multiplicity_factorial();
}

/// Number of forth-back permutations with the given (all even) cycle lengths.
inline Int forth_back_count_by_type(const CycleType& t) {
    if (!t.all_even())
        throw std::invalid_argument("forth_back_count_by_type: all cycle lengths must be even");
    const auto a = zigzag_numbers(t.n());
    Int r = set_partition_count(t);
    for (int p : t.parts()) r *= a[static_cast<size_t>(p) - 1];
    return r;
}

/// Sum of sn over all permutations with the given cycle type (parts >= 2).
inline Int sign_sum_by_type(const CycleType& t) {
    if (!t.all_at_least(2))
        throw std::invalid_argument("sign_sum_by_type: cycle lengths must be at least 2");
    if (!t.all_even()) return 0;
    const Int base = forth_back_count_by_type(t);
    return t.n() / 2 % 2 == 0 ? base : -base;
}

/// Points h whose preimage and image lie on opposite sides of h.
inline std::vector<int> transit_points(const Permutation& s) {
    const Permutation inv = s.inverse();
    std::vector<int> out;
    for (int h = 1; h <= s.size(); ++h) {
        const int a = inv(h), b = s(h);
        if ((a < h && h < b) || (a > h && h > b)) out.push_back(h);
    }
    return out;
}

/// Equivalence class of a permutation with transit: remove the smallest
/// transit h from its cycle and reinsert it at every position of the
/// shortened cycle where it is again a transit.
inline std::vector<Permutation> equivalence_class(const Permutation& s) {
    const auto transits = transit_points(s);
    if (transits.empty()) throw std::invalid_argument("equivalence_class: permutation has no transit");
    const int h = transits.front();
    std::vector<int> cyc{h};
    for (int x = s(h); x != h; x = s(x)) cyc.push_back(x);
    std::vector<int> shortened(cyc.begin() + 1, cyc.end());
    const size_t len = shortened.size();
    std::vector<Permutation> out;
    for (size_t i = 0; i < len; ++i) {
        const int u = shortened[i];
        const int v = shortened[(i + 1) % len];
        if (!((u < h && h < v) || (u > h && h > v))) continue;
        std::vector<int> reinserted;
        for (size_t k = 0; k < len; ++k) {
            reinserted.push_back(shortened[k]);
            if (k == i) reinserted.push_back(h);
        }
        auto im = s.images();
        for (size_t k = 0; k < reinserted.size(); ++k) {
            const int from = reinserted[k];
            const int to = reinserted[(k + 1) % reinserted.size()];
            im[static_cast<size_t>(from) - 1] = to;
        }
        out.emplace_back(std::move(im));
    }
    return out;
}

/// Eulerian number <n over j> by the additive recurrence.
inline std::vector<Int> eulerian_row(int n) {
    if (n < 0) throw std::invalid_argument("eulerian_row: negative n");
    std::vector<Int> row{1};
    for (int k = 1; k <= n; ++k) {
        std::vector<Int> next(static_cast<size_t>(k), 0);
        for (int j = 0; j < k; ++j) {
            Int v = 0;
            if (j < static_cast<int>(row.size())) v += Int(j + 1) * row[static_cast<size_t>(j)];
            if (j >= 1 && j - 1 < static_cast<int>(row.size()))
                v += Int(k - j) * row[static_cast<size_t>(j) - 1];
            next[static_cast<size_t>(j)] = v;
        }
        row = std::move(next);
    }
    return row;
}

inline Int eulerian_number(int n, int j) {
    if (j < 0) return 0;
    const auto row = eulerian_row(n);
    return j < static_cast<int>(row.size()) ? row[static_cast<size_t>(j)] : Int(0);
}

/// Coefficient list of the Euler polynomial S_n(tau); S_0 = 1.
inline std::vector<Int> euler_polynomial(int n) { return eulerian_row(n); }

/// Number of permutations of S_n with exactly j cyclic descents:
/// n <n-1 over j-1> for 0 < j < n, zero otherwise.
inline Int cyclic_descent_count(int n, int j) {
    if (n < 1) throw std::invalid_argument("cyclic_descent_count: n must be positive");
    if (j <= 0 || j >= n) return 0;
    return Int(n) * eulerian_number(n - 1, j - 1);
}

/// Number of permutations of S_n with s(x) < x for exactly j points, by
/// direct enumeration.
inline Int exceedance_statistic(int n, int j) {
    if (n < 0 || n > 10)
        throw std::invalid_argument("exceedance_statistic: enumeration limited to n <= 10");
    if (j < 0 || j >= std::max(n, 1)) return n == 0 && j == 0 ? Int(1) : Int(0);
    Int count = 0;
    for_each_permutation(n, [&](const std::vector<int>& im) {
        int below = 0;
        for (int x = 1; x <= n; ++x)
            if (im[static_cast<size_t>(x) - 1] < x) ++below;
        if (below == j) ++count;
    });
    return count;
}

/// Precomputed zigzag numbers, Eulerian triangle and Euler polynomial
/// coefficients up to a bound, with the defining identities checked on
/// construction.
struct EulerTables {
    std::vector<Int> zigzag;                 // A_0 .. A_max
    std::vector<std::vector<Int>> eulerian;  // row n = <n over 0..n-1>
    std::vector<std::vector<Int>> euler_poly;  // coefficients of S_n(tau)
};

inline EulerTables make_euler_tables(int max_n) {
    EulerTables t;
    t.zigzag = zigzag_numbers(max_n);
    if (t.zigzag[0] != 1 || (max_n >= 1 && t.zigzag[1] != 1))
        throw std::logic_error("EulerTables: A_0 = A_1 = 1 violated");
    for (int n = 0; n <= max_n; ++n) {
        t.eulerian.push_back(eulerian_row(n));
        t.euler_poly.push_back(t.eulerian.back());
        Int sum = 0;
        for (const Int& v : t.eulerian.back()) sum += v;
        if (sum != factorial(n)) throw std::logic_error("EulerTables: row sum is not n!");
    }
    return t;
}

/// All partitions of m into nondecreasing parts >= min_part, in lexicographic
/// order of the part lists.
inline std::vector<CycleType> partitions_of(int m, int min_part = 1) {
    if (m < 0) throw std::invalid_argument("partitions_of: negative m");
    if (min_part < 1) throw std::invalid_argument("partitions_of: min_part must be >= 1");
    std::vector<CycleType> out;
    if (m == 0) return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rem, int mn) -> void {
        if (rem == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int p = mn; p <= rem; ++p) {
            cur.push_back(p);
            self(self, rem - p, p);
            cur.pop_back();
        }
    };
    rec(rec, m, min_part);
    return out;
}

}  // namespace sticky
