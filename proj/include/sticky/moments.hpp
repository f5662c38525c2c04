#pragma once

#include <string>
#include <thread>
#include <vector>

#include "sticky/combinatorics.hpp"
#include "sticky/tensor.hpp"

namespace sticky {

/// A rank-2 iterated-integral word together with the exact prefactor that the
/// corresponding area carries in front of the integral map.
struct AreaWord {
    TensorElement element;
    GaussianRational prefactor;
    std::string name;
};

/// Normalized quantum area over the symbolic table: i (dAhat x dAhatDag -
/// dAhatDag x dAhat). This is the default pipeline input.
inline AreaWord quantum_area_normalized() {
    AlgebraPtr alg = builtin_algebra(Builtin::QuantumAhat);
    TensorElement e = TensorElement::single(alg, {0, 1}) - TensorElement::single(alg, {1, 0});
    return {std::move(e), GaussianRational::i(), "quantumAhatArea"};
}

/// Classical area in the complexified basis: i (dZ x dZbar - dZbar x dZ).
inline AreaWord classical_area_z() {
    AlgebraPtr alg = builtin_algebra(Builtin::ClassicalZ);
    TensorElement e = TensorElement::single(alg, {0, 1}) - TensorElement::single(alg, {1, 0});
    return {std::move(e), GaussianRational::i(), "classicalZArea"};
}

/// Classical area over the planar table: (1/2)(dX x dY - dY x dX).
inline AreaWord classical_area_planar() {
    AlgebraPtr alg = builtin_algebra(Builtin::ClassicalPlanar);
    TensorElement e = TensorElement::single(alg, {0, 1}) - TensorElement::single(alg, {1, 0});
    return {std::move(e), GaussianRational(Rational(1, 2)), "classicalPlanarArea"};
}

/// Unnormalized quantum area: (1/2)(dP x dQ - dQ x dP) at a rational sigma^2.
inline AreaWord quantum_area_pq(const Rational& sigma_squared) {
    AlgebraPtr alg = builtin_algebra(Builtin::QuantumPQ, sigma_squared);
    TensorElement e = TensorElement::single(alg, {0, 1}) - TensorElement::single(alg, {1, 0});
    return {std::move(e), GaussianRational(Rational(1, 2)), "quantumPQArea"};
}

/// True when expectation of the iterated integral of the word survives, i.e.
/// every letter is the time symbol.
inline bool expectation_rule(const ItoAlgebra& alg, const Word& w) {
    for (int l : w)
        if (!alg.is_time(l)) return false;
    return true;
}

/// Coefficient of dT x ... x dT (n factors) in the rank-n component of the
/// n-th sticky power of the area word. Terms above rank n are pruned along
/// the way; they cannot fall back to rank n.
inline Scalar w_hopf(const AreaWord& area, int n) {
    if (n < 0) throw std::invalid_argument("w_hopf: negative order");
    const TensorElement p = power_truncated(area.element, n, n);
    const Word all_time(static_cast<size_t>(n), area.element.algebra()->time_index());
    return p.coefficient(all_time);
}

struct OracleOptions {
    int limit = 6;
    bool allow_large = false;  // raises the limit to 8
    int workers = 1;
};

inline Int derangement_count(int n) {
    Int a = 1, b = 0;  // D_0, D_1
    if (n == 0) return 1;
    for (int k = 2; k <= n; ++k) {
        Int c = Int(k - 1) * (a + b);
        a = b;
        b = c;
    }
    return n == 1 ? Int(0) : b;
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<std::vector<int>> out;
    for_each_permutation(n, [&](const std::vector<int>& im) { out.push_back(im); });
    return out;
}

inline Scalar fold_tau_coefficients(const std::vector<Int>& coeff, int n) {
    // sum_d coeff[d] s+^d s-^(n-d); exponents checked nonnegative.
    Scalar w;
    for (int d = 0; d < static_cast<int>(coeff.size()); ++d) {
        if (coeff[static_cast<size_t>(d)] == 0) continue;
        if (d > n) throw std::logic_error("tau degree exceeds the sigma- budget");
        w += Scalar::monomial(d, n - d, GaussianRational(Rational(coeff[static_cast<size_t>(d)])));
    }
    return w;
}

}  // namespace detail

/// Inner sum of the oracle for a fixed fixed-point-free permutation:
/// coefficients (indexed by tau degree) of sum over l of
/// tau^{sum_j des(l(j), l(s(j)))}.
inline std::vector<Int> oracle_inner_sum(const Permutation& s) {
    const int n = s.size();
    std::vector<Int> coeff(static_cast<size_t>(n) + 1, 0);
    for_each_permutation(n, [&](const std::vector<int>& l) {
        int d = 0;
        for (int j = 1; j <= n; ++j)
            d += des_pair(l[static_cast<size_t>(j) - 1], l[static_cast<size_t>(s(j)) - 1]);
        ++coeff[static_cast<size_t>(d)];
    });
    return coeff;
}

/// Brute-force w by the double permutation sum
///   w_n = s-^n  sum_{s fixed-point-free} sn(s) sum_l prod_j tau^{des(l(j), l(s(j)))}
/// with every tau^d s-^n folded as s+^d s-^(n-d).
inline Scalar w_oracle(int n, const OracleOptions& opts = {}) {
    if (n < 2) throw std::invalid_argument("w_oracle: order must be at least 2");
    const int limit = opts.allow_large ? std::max(opts.limit, 8) : opts.limit;
    if (n > limit || n > 8) {
        const Int pairs = derangement_count(n) * factorial(n);
        std::ostringstream os;
        os << "w_oracle: order " << n << " needs about " << pairs
           << " permutation pairs, above the configured limit of " << limit
           << (n > 8 ? " (orders above 8 are always refused)" : " (pass the large-oracle opt-in)");
        throw std::invalid_argument(os.str());
    }

    const auto perms = detail::all_permutations(n);
    struct Outer {
        const std::vector<int>* s;
        int sign;
    };
    std::vector<Outer> outers;
    for (const auto& s : perms) {
        bool fpf = true;
        int e = 0;
        for (int j = 1; j <= n; ++j) {
            const int v = s[static_cast<size_t>(j) - 1];
            if (v == j) {
                fpf = false;
                break;
            }
            e += des_pair(j, v);
        }
        if (fpf) outers.push_back({&s, e % 2 == 0 ? 1 : -1});
    }

    const int workers = std::max(1, opts.workers);
    std::vector<std::vector<long long>> acc(
        static_cast<size_t>(workers), std::vector<long long>(static_cast<size_t>(n) + 1, 0));
    auto run = [&](int wi) {
        auto& a = acc[static_cast<size_t>(wi)];
        for (size_t oi = static_cast<size_t>(wi); oi < outers.size();
             oi += static_cast<size_t>(workers)) {
            const auto& s = *outers[oi].s;
            const int sign = outers[oi].sign;
            for (const auto& l : perms) {
                int d = 0;
                for (int j = 0; j < n; ++j)
                    d += des_pair(l[static_cast<size_t>(j)],
                                  l[static_cast<size_t>(s[static_cast<size_t>(j)]) - 1]);
                a[static_cast<size_t>(d)] += sign;
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (int wi = 0; wi < workers; ++wi) threads.emplace_back(run, wi);
        for (auto& t : threads) t.join();
    }
    std::vector<Int> coeff(static_cast<size_t>(n) + 1, 0);
    for (const auto& a : acc)
        for (size_t d = 0; d <= static_cast<size_t>(n); ++d) coeff[d] += a[d];
    return detail::fold_tau_coefficients(coeff, n);
}

/// Variant of the oracle in the pre-substitution form, with exponents
/// des(l^{-1}(s^{-1}(j)), l^{-1}(j)). Cross-check only; limited to n <= 4.
inline Scalar w_oracle_presubstitution(int n) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("w_oracle_presubstitution: only orders 2..4 supported");
    const auto perms = detail::all_permutations(n);
    std::vector<Int> coeff(static_cast<size_t>(n) + 1, 0);
    for (const auto& simg : perms) {
        const Permutation s{simg};
        if (!s.is_fixed_point_free()) continue;
        const int sign = sign_sn(s);
        const Permutation sinv = s.inverse();
        for (const auto& limg : perms) {
            const Permutation linv = Permutation(limg).inverse();
            int d = 0;
            for (int j = 1; j <= n; ++j) d += des_pair(linv(sinv(j)), linv(j));
            coeff[static_cast<size_t>(d)] += sign;
        }
    }
    return detail::fold_tau_coefficients(coeff, n);
}

/// Closed form: for n = 2m,
///   w = (-1)^m (2m)!^2 sum over partitions of m of
///       s-^{2m-k} s+^k / (k_1! ... k_r!) *
///       prod_j A_{2m_j-1} / (2m_j (2m_j-1)!^2) * S_{2m_j-1}(tau),
/// expanded as a polynomial in s+ and s-.
inline Scalar w_closed(int m) {
    if (m < 1) throw std::invalid_argument("w_closed: m must be positive");
    const auto zig = zigzag_numbers(2 * m);
    Scalar w;
    for (const auto& part : partitions_of(m)) {
        const int k = part.block_count();
        Rational pref = Rational(factorial(2 * m) * factorial(2 * m), part.multiplicity_factorial());
        if (m % 2 == 1) pref = -pref;
        std::vector<Int> tau_poly{1};
        for (int mj : part.parts()) {
            pref *= Rational(zig[static_cast<size_t>(2 * mj) - 1],
                             Int(2 * mj) * factorial(2 * mj - 1) * factorial(2 * mj - 1));
            const auto sp = euler_polynomial(2 * mj - 1);
            std::vector<Int> next(tau_poly.size() + sp.size() - 1, 0);
            for (size_t a = 0; a < tau_poly.size(); ++a)
                for (size_t b = 0; b < sp.size(); ++b) next[a + b] += tau_poly[a] * sp[b];
            tau_poly = std::move(next);
        }
        // s-^{2m-k} s+^k tau^d = s+^{k+d} s-^{2m-k-d}; deg S_{2m_j-1} = 2m_j - 2
        // keeps the s- exponent nonnegative.
        for (int d = 0; d < static_cast<int>(tau_poly.size()); ++d) {
            if (tau_poly[static_cast<size_t>(d)] == 0) continue;
            if (d > 2 * m - k) throw std::logic_error("w_closed: tau degree exceeds sigma- budget");
            w += Scalar::monomial(k + d, 2 * m - k - d,
                                  GaussianRational(pref * Rational(tau_poly[static_cast<size_t>(d)])));
        }
    }
    return w;
}

struct SigmaValue {
    enum class Kind { Symbolic, Infinity, Finite } kind = Kind::Symbolic;
    Rational value{0};

    static SigmaValue symbolic() { return {}; }
    static SigmaValue infinity() { return {Kind::Infinity, 0}; }
    static SigmaValue finite(Rational v) { return {Kind::Finite, std::move(v)}; }

    std::string to_string() const {
        switch (kind) {
            case Kind::Symbolic: return "sym";
            case Kind::Infinity: return "inf";
            case Kind::Finite: return rational_to_string(value);
        }
        return "";
    }

    static SigmaValue parse(std::string_view text) {
        if (text == "sym" || text == "symbolic") return symbolic();
        if (text == "inf" || text == "infinity") return infinity();
        return finite(parse_rational(text));
    }
};

enum class MomentMethod { Hopf, Oracle, Closed };

inline std::string method_name(MomentMethod m) {
    switch (m) {
        case MomentMethod::Hopf: return "hopf";
        case MomentMethod::Oracle: return "oracle";
        case MomentMethod::Closed: return "closed";
    }
    return "";
}

struct MomentReport {
    int order = 0;
    std::string method;
    Scalar w;
    Rational a{0};
    Rational b{1};
    SigmaValue sigma;
    Scalar moment;  // constant Scalar unless sigma is symbolic

    bool moment_is_rational() const { return moment.is_constant() && moment.constant_value().is_real(); }
    Rational moment_rational() const { return moment.constant_value().re; }
};

/// sigma_{+-} = (1 +- sigma^{-2})/2.
inline std::pair<Rational, Rational> sigma_weights(const Rational& sigma) {
    const Rational inv2 = 1 / (sigma * sigma);
    return {Rational(1, 2) * (1 + inv2), Rational(1, 2) * (1 - inv2)};
}

/// Moment of the area over [a,b): prefactor^n w_n (b-a)^n / n!, with sigma
/// substituted when finite (sigma >= 1) or infinite (s+ = s- = 1/2).
inline MomentReport moment(const AreaWord& area, int n, const Rational& a, const Rational& b,
                           const SigmaValue& sigma, MomentMethod method = MomentMethod::Hopf,
                           const OracleOptions& oracle_opts = {}) {
    if (n < 0) throw std::invalid_argument("moment: negative order");
    if (!(a < b)) throw std::invalid_argument("moment: requires a < b");
    if (sigma.kind == SigmaValue::Kind::Finite && sigma.value < 1)
        throw std::invalid_argument("moment: requires sigma >= 1");

    Scalar w;
    switch (method) {
        case MomentMethod::Hopf: w = w_hopf(area, n); break;
        case MomentMethod::Oracle:
        case MomentMethod::Closed:
            if (area.name != "quantumAhatArea")
                throw std::invalid_argument(
                    "moment: the oracle and closed methods apply to the normalized quantum area");
            if (n % 2 == 1) {
                w = Scalar::zero();
            } else if (method == MomentMethod::Oracle) {
                if (n == 0) {
                    w = Scalar::one();
                } else {
                    w = w_oracle(n, oracle_opts);
                }
            } else {
                w = n == 0 ? Scalar::one() : w_closed(n / 2);
            }
            break;
    }

    const GaussianRational fold =
        area.prefactor.pow(n) * GaussianRational(rational_pow(b - a, n) / Rational(factorial(n)));
    Scalar mom = w * fold;
    if (sigma.kind == SigmaValue::Kind::Infinity) {
        mom = mom.substitute(Rational(1, 2), Rational(1, 2));
    } else if (sigma.kind == SigmaValue::Kind::Finite) {
        const auto [sp, sm] = sigma_weights(sigma.value);
        mom = mom.substitute(sp, sm);
    }
    return {n, method_name(method), std::move(w), a, b, sigma, std::move(mom)};
}

/// Classical moments E[A^{2m}] = ((b-a)/2)^{2m} A_{2m} for m = 1..m_max.
inline std::vector<Rational> classical_moments(int m_max, const Rational& a, const Rational& b) {
    if (!(a < b)) throw std::invalid_argument("classical_moments: requires a < b");
    const auto zig = zigzag_numbers(2 * std::max(m_max, 0));
    std::vector<Rational> out;
    for (int m = 1; m <= m_max; ++m)
        out.push_back(rational_pow((b - a) / 2, 2 * m) * Rational(zig[static_cast<size_t>(2 * m)]));
    return out;
}

/// Coefficients of z^{2m} in sech(z) for m = 0..m_max, by exact power-series
/// reciprocal of cosh.
inline std::vector<Rational> sech_taylor(int m_max) {
    if (m_max < 0) throw std::invalid_argument("sech_taylor: negative order");
    std::vector<Rational> cosh_c, out;
    for (int k = 0; k <= m_max; ++k) cosh_c.push_back(Rational(1, factorial(2 * k)));
    out.push_back(1);
    for (int m = 1; m <= m_max; ++m) {
        Rational s = 0;
        for (int k = 1; k <= m; ++k) s += cosh_c[static_cast<size_t>(k)] * out[static_cast<size_t>(m - k)];
        out.push_back(-s);
    }
    return out;
}

}  // namespace sticky
