#include "sticky/moments.hpp"

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace sticky {
namespace {

Scalar real_monomial(int ep, int em, long long num, long long den = 1) {
    return Scalar::monomial(ep, em, GaussianRational(Rational(num, den)));
}

// w_2, w_4, w_6 as frozen by an independent implementation of the double
// permutation sum.
Scalar frozen_w(int n) {
    switch (n) {
        case 2: return real_monomial(1, 1, -2);
        case 4: return real_monomial(1, 3, 8) + real_monomial(2, 2, 104) + real_monomial(3, 1, 8);
        case 6:
            return real_monomial(1, 5, -96) + real_monomial(2, 4, -6096) +
                   real_monomial(3, 3, -31536) + real_monomial(4, 2, -6096) +
                   real_monomial(5, 1, -96);
        default: throw std::logic_error("no frozen value");
    }
}

TEST(WHopf, BaseCases) {
    const auto area = quantum_area_normalized();
    EXPECT_EQ(w_hopf(area, 0), Scalar::one());
    EXPECT_EQ(w_hopf(area, 1), Scalar::zero());
    EXPECT_EQ(w_hopf(area, 2), frozen_w(2));
}

TEST(WHopf, MatchesFrozenValues) {
    const auto area = quantum_area_normalized();
    EXPECT_EQ(w_hopf(area, 4), frozen_w(4));
    EXPECT_EQ(w_hopf(area, 6), frozen_w(6));
}

TEST(WHopf, OddOrdersVanish) {
    const auto area = quantum_area_normalized();
    for (int n : {1, 3, 5, 7}) EXPECT_TRUE(w_hopf(area, n).is_zero()) << n;
}

TEST(WOracle, HandEnumerationAtOrderTwo) {
    // S_2 has one fixed-point-free permutation with sign -1 and inner sum 2 tau.
    EXPECT_EQ(w_oracle(2), frozen_w(2));
    const auto inner = oracle_inner_sum(Permutation({2, 1}));
    EXPECT_EQ(inner[0], 0);
    EXPECT_EQ(inner[1], 2);
    EXPECT_EQ(inner[2], 0);
}

TEST(WOracle, MatchesHopfThroughSix) {
    const auto area = quantum_area_normalized();
    for (int n = 2; n <= 6; ++n) {
        SCOPED_TRACE(n);
        EXPECT_EQ(w_oracle(n), w_hopf(area, n));
    }
}

TEST(WOracle, RefusesAboveLimitWithCostEstimate) {
    try {
        w_oracle(8);
        FAIL() << "expected refusal";
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("limit"), std::string::npos);
        // |S_8^neq| * 8! = 14833 * 40320
        EXPECT_NE(msg.find("598066560"), std::string::npos);
    }
    EXPECT_THROW(w_oracle(10, OracleOptions{.limit = 6, .allow_large = true}),
                 std::invalid_argument);
    EXPECT_THROW(w_oracle(1), std::invalid_argument);
}

TEST(WOracle, WorkerPartitioningIsObservationallyEqual) {
    OracleOptions two;
    two.workers = 2;
    EXPECT_EQ(w_oracle(4, two), w_oracle(4));
    EXPECT_EQ(w_oracle(5, two), w_oracle(5));
}

TEST(WOracle, PresubstitutionVariantAgrees) {
    for (int n = 2; n <= 4; ++n) {
        SCOPED_TRACE(n);
        EXPECT_EQ(w_oracle_presubstitution(n), w_oracle(n));
    }
    EXPECT_THROW(w_oracle_presubstitution(5), std::invalid_argument);
}

TEST(WClosed, PartitionFormula) {
    EXPECT_EQ(w_closed(1), frozen_w(2));
    EXPECT_EQ(w_closed(2), frozen_w(4));
    EXPECT_EQ(w_closed(3), frozen_w(6));
    EXPECT_THROW(w_closed(0), std::invalid_argument);
}

TEST(WClosed, MatchesHopfAtOrderEight) {
    const auto area = quantum_area_normalized();
    EXPECT_EQ(w_closed(4), w_hopf(area, 8));
}

TEST(WOracle, OptInOrderEightMatchesClosedForm) {
    OracleOptions opts;
    opts.allow_large = true;
    EXPECT_EQ(w_oracle(8, opts), w_closed(4));
}

TEST(InnerSums, CyclicCaseIsEulerPolynomial) {
    testing::Rng rng(31);
    for (int n : {2, 4, 6}) {
        SCOPED_TRACE(n);
        for (int iter = 0; iter < 3; ++iter) {
            const auto s = testing::rand_cyclic_permutation(rng, n);
            EXPECT_TRUE(
                testing::tau_coeffs_equal(oracle_inner_sum(s), testing::cyclic_inner_sum_formula(n)));
        }
    }
}

TEST(InnerSums, TypedCaseFactorsOverCycles) {
    testing::Rng rng(32);
    for (int n = 4; n <= 6; ++n) {
        for (int iter = 0; iter < 10; ++iter) {
            const auto s = testing::rand_permutation(rng, n);
            if (!s.is_fixed_point_free()) continue;
            const auto type = cycle_type_of(s);
            SCOPED_TRACE(permutation_to_string(s));
            EXPECT_TRUE(testing::tau_coeffs_equal(oracle_inner_sum(s),
                                                  testing::typed_inner_sum_formula(type)));
        }
    }
}

TEST(Moment, SymbolicSecondMoment) {
    const auto area = quantum_area_normalized();
    const auto r = moment(area, 2, 0, 1, SigmaValue::symbolic());
    EXPECT_EQ(r.moment, Scalar::sigma_plus() * Scalar::sigma_minus());
    // over [a, b) the second moment scales by (b-a)^2
    const auto r2 = moment(area, 2, Rational(-1), Rational(2), SigmaValue::symbolic());
    EXPECT_EQ(r2.moment, Scalar(9) * Scalar::sigma_plus() * Scalar::sigma_minus());
}

TEST(Moment, ClassicalLimitValues) {
    const auto area = quantum_area_normalized();
    const std::vector<Rational> expected{Rational(1, 4), Rational(5, 16), Rational(61, 64),
                                         Rational(1385, 256)};
    for (int m = 1; m <= 4; ++m) {
        for (const auto method : {MomentMethod::Hopf, MomentMethod::Closed}) {
            const auto r = moment(area, 2 * m, 0, 1, SigmaValue::infinity(), method);
            ASSERT_TRUE(r.moment_is_rational());
            EXPECT_EQ(r.moment_rational(), expected[static_cast<size_t>(m) - 1]);
        }
    }
}

TEST(Moment, OddOrdersAreZero) {
    const auto area = quantum_area_normalized();
    for (int n : {1, 3, 5}) {
        const auto r = moment(area, n, 0, 1, SigmaValue::infinity());
        EXPECT_TRUE(r.moment.is_zero());
        const auto rc = moment(area, n, 0, 1, SigmaValue::infinity(), MomentMethod::Closed);
        EXPECT_TRUE(rc.moment.is_zero());
    }
}

TEST(Moment, FiniteSigmaSecondMoment) {
    const auto area = quantum_area_normalized();
    for (const int sig : {1, 2, 10}) {
        const auto r = moment(area, 2, 0, 1, SigmaValue::finite(sig));
        ASSERT_TRUE(r.moment_is_rational());
        // (1 - sigma^-4)/4
        const Rational expected = (1 - rational_pow(Rational(1, sig), 4)) / 4;
        EXPECT_EQ(r.moment_rational(), expected);
    }
}

TEST(Moment, DegenerateAtSigmaOne) {
    const auto area = quantum_area_normalized();
    for (int n = 1; n <= 6; ++n) {
        const auto r = moment(area, n, 0, 1, SigmaValue::finite(1));
        EXPECT_TRUE(r.moment.is_zero()) << n;
    }
}

TEST(Moment, ValidatesArguments) {
    const auto area = quantum_area_normalized();
    EXPECT_THROW(moment(area, 2, 1, 0, SigmaValue::infinity()), std::invalid_argument);
    EXPECT_THROW(moment(area, 2, 0, 0, SigmaValue::infinity()), std::invalid_argument);
    EXPECT_THROW(moment(area, 2, 0, 1, SigmaValue::finite(Rational(1, 2))), std::invalid_argument);
    EXPECT_THROW(moment(area, -1, 0, 1, SigmaValue::infinity()), std::invalid_argument);
}

TEST(Moment, OrderZeroIsOne) {
    const auto area = quantum_area_normalized();
    for (const auto method : {MomentMethod::Hopf, MomentMethod::Oracle, MomentMethod::Closed}) {
        const auto r = moment(area, 0, 0, 1, SigmaValue::infinity(), method);
        ASSERT_TRUE(r.moment_is_rational());
        EXPECT_EQ(r.moment_rational(), 1);
    }
}

// The unnormalized pipelines reproduce the same physics: the complexified and
// planar classical areas give A_2((b-a)/2)^2, and the unnormalized quantum
// area is sigma^4 times the normalized one.
TEST(Moment, AlternateAreaWordsAgree) {
    const auto z = classical_area_z();
    const auto planar = classical_area_planar();
    for (const auto& area : {z, planar}) {
        const auto r = moment(area, 2, 0, 1, SigmaValue::infinity());
        ASSERT_TRUE(r.moment_is_rational());
        EXPECT_EQ(r.moment_rational(), Rational(1, 4));
        const auto r4 = moment(area, 4, 0, 1, SigmaValue::infinity());
        EXPECT_EQ(r4.moment_rational(), Rational(5, 16));
    }
    const Rational s2(4);
    const auto pq = quantum_area_pq(s2);
    const auto normalized = moment(quantum_area_normalized(), 2, 0, 1, SigmaValue::finite(2));
    const auto unnormalized = moment(pq, 2, 0, 1, SigmaValue::finite(2));
    ASSERT_TRUE(unnormalized.moment_is_rational());
    EXPECT_EQ(unnormalized.moment_rational(), s2 * s2 * normalized.moment_rational());
    // oracle and closed methods are tied to the normalized area word
    EXPECT_THROW(moment(pq, 2, 0, 1, SigmaValue::finite(2), MomentMethod::Closed),
                 std::invalid_argument);
}

TEST(ClassicalMoments, ZigzagValues) {
    const auto m01 = classical_moments(4, 0, 1);
    ASSERT_EQ(m01.size(), 4u);
    EXPECT_EQ(m01[0], Rational(1, 4));
    EXPECT_EQ(m01[1], Rational(5, 16));
    EXPECT_EQ(m01[2], Rational(61, 64));
    EXPECT_EQ(m01[3], Rational(1385, 256));
    const auto m02 = classical_moments(1, 0, 2);
    EXPECT_EQ(m02[0], Rational(1));
}

TEST(SechTaylor, SeriesReciprocalValues) {
    const auto c = sech_taylor(5);
    ASSERT_EQ(c.size(), 6u);
    EXPECT_EQ(c[0], Rational(1));
    EXPECT_EQ(c[1], Rational(-1, 2));
    EXPECT_EQ(c[2], Rational(5, 24));
    EXPECT_EQ(c[3], Rational(-61, 720));
    EXPECT_EQ(c[4], Rational(277, 8064));
    EXPECT_EQ(c[5], Rational(-50521, 3628800));
}

TEST(SechTaylor, CoefficientsAreSignedZigzagOverFactorial) {
    const auto c = sech_taylor(5);
    const auto a = zigzag_numbers(10);
    for (int m = 0; m <= 5; ++m) {
        Rational expected = Rational(a[static_cast<size_t>(2 * m)], factorial(2 * m));
        if (m % 2 == 1) expected = -expected;
        EXPECT_EQ(c[static_cast<size_t>(m)], expected);
    }
}

TEST(SechTaylor, HalfArgumentMatchesClassicalMoments) {
    // (-1)^m (2m)! [z^{2m}] sech(z/2) = A_{2m} / 2^{2m} = moment(2m, 0, 1, inf)
    const auto c = sech_taylor(4);
    const auto area = quantum_area_normalized();
    for (int m = 1; m <= 4; ++m) {
        Rational half_arg = c[static_cast<size_t>(m)] / rational_pow(Rational(2), 2 * m);
        Rational lhs = Rational(factorial(2 * m)) * half_arg;
        if (m % 2 == 1) lhs = -lhs;
        const auto r = moment(area, 2 * m, 0, 1, SigmaValue::infinity());
        EXPECT_EQ(lhs, r.moment_rational());
    }
}

TEST(ExpectationRule, OnlyAllTimeWordsSurvive) {
    const auto alg = builtin_algebra(Builtin::QuantumAhat);
    const int dT = alg->time_index();
    EXPECT_TRUE(expectation_rule(*alg, {dT, dT}));
    EXPECT_FALSE(expectation_rule(*alg, {dT, 0}));
    EXPECT_TRUE(expectation_rule(*alg, {}));
}

TEST(SigmaValue, Parsing) {
    EXPECT_EQ(SigmaValue::parse("inf").kind, SigmaValue::Kind::Infinity);
    EXPECT_EQ(SigmaValue::parse("sym").kind, SigmaValue::Kind::Symbolic);
    const auto v = SigmaValue::parse("7/2");
    EXPECT_EQ(v.kind, SigmaValue::Kind::Finite);
    EXPECT_EQ(v.value, Rational(7, 2));
    EXPECT_THROW(SigmaValue::parse("xyz"), std::invalid_argument);
}

}  // namespace
}  // namespace sticky
