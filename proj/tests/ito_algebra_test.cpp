#include "sticky/ito_algebra.hpp"

#include <gtest/gtest.h>

#include "sticky/serialize.hpp"
#include "test_support.hpp"

namespace sticky {
namespace {

LinComb time_multiple(const ItoAlgebra& alg, const Scalar& c) {
    return LinComb{{alg.time_index(), c}};
}

TEST(Builtins, Classical1d) {
    const auto alg = builtin_algebra(Builtin::Classical1d);
    const int dX = alg->require_label("dX"), dT = alg->require_label("dT");
    EXPECT_EQ(alg->product(dX, dX), time_multiple(*alg, Scalar::one()));
    EXPECT_TRUE(alg->product(dX, dT).empty());
    EXPECT_TRUE(alg->product(dT, dX).empty());
    EXPECT_TRUE(alg->product(dT, dT).empty());
}

TEST(Builtins, ClassicalPlanar) {
    const auto alg = builtin_algebra(Builtin::ClassicalPlanar);
    const int dX = alg->require_label("dX"), dY = alg->require_label("dY");
    EXPECT_EQ(alg->product(dX, dX), time_multiple(*alg, Scalar::one()));
    EXPECT_EQ(alg->product(dY, dY), time_multiple(*alg, Scalar::one()));
    EXPECT_TRUE(alg->product(dX, dY).empty());
    EXPECT_TRUE(alg->product(dY, dX).empty());
}

TEST(Builtins, QuantumPQ) {
    const auto alg = builtin_algebra(Builtin::QuantumPQ, Rational(4));
    const int dP = alg->require_label("dP"), dQ = alg->require_label("dQ");
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(alg->product(dP, dP), time_multiple(*alg, Scalar(Rational(4))));
    EXPECT_EQ(alg->product(dQ, dQ), time_multiple(*alg, Scalar(Rational(4))));
    EXPECT_EQ(alg->product(dP, dQ), time_multiple(*alg, Scalar(-i)));
    EXPECT_EQ(alg->product(dQ, dP), time_multiple(*alg, Scalar(i)));
}

TEST(Builtins, ClassicalZ) {
    const auto alg = builtin_algebra(Builtin::ClassicalZ);
    const int dZ = alg->require_label("dZ"), dZbar = alg->require_label("dZbar");
    EXPECT_EQ(alg->product(dZ, dZbar), time_multiple(*alg, Scalar(Rational(1, 2))));
    EXPECT_EQ(alg->product(dZbar, dZ), time_multiple(*alg, Scalar(Rational(1, 2))));
    EXPECT_TRUE(alg->product(dZ, dZ).empty());
    EXPECT_TRUE(alg->product(dZbar, dZbar).empty());
}

TEST(Builtins, QuantumA) {
    const auto alg = builtin_algebra(Builtin::QuantumA, Rational(4));
    const int dA = alg->require_label("dA"), dAdag = alg->require_label("dAdag");
    EXPECT_EQ(alg->product(dA, dAdag), time_multiple(*alg, Scalar(Rational(5, 2))));
    EXPECT_EQ(alg->product(dAdag, dA), time_multiple(*alg, Scalar(Rational(3, 2))));
    EXPECT_TRUE(alg->product(dA, dA).empty());
}

TEST(Builtins, QuantumPQhat) {
    const auto alg = builtin_algebra(Builtin::QuantumPQhat, Rational(4));
    const int dP = alg->require_label("dPhat"), dQ = alg->require_label("dQhat");
    const GaussianRational i = GaussianRational::i();
    EXPECT_EQ(alg->product(dP, dP), time_multiple(*alg, Scalar::one()));
    EXPECT_EQ(alg->product(dQ, dQ), time_multiple(*alg, Scalar::one()));
    EXPECT_EQ(alg->product(dP, dQ), time_multiple(*alg, Scalar(-i * GaussianRational(Rational(1, 4)))));
    EXPECT_EQ(alg->product(dQ, dP), time_multiple(*alg, Scalar(i * GaussianRational(Rational(1, 4)))));
}

TEST(Builtins, QuantumAhatSymbolic) {
    const auto alg = builtin_algebra(Builtin::QuantumAhat);
    const int a = alg->require_label("dAhat"), ad = alg->require_label("dAhatDag");
    EXPECT_EQ(alg->product(a, ad), time_multiple(*alg, Scalar::sigma_plus()));
    EXPECT_EQ(alg->product(ad, a), time_multiple(*alg, Scalar::sigma_minus()));
    EXPECT_TRUE(alg->product(a, a).empty());
    EXPECT_TRUE(alg->product(ad, ad).empty());
}

TEST(Builtins, TimeAnnihilatesInBothOrders) {
    for (const auto& [name, alg] : testing::all_builtins()) {
        SCOPED_TRACE(name);
        EXPECT_TRUE(alg->time_is_annihilating());
    }
}

TEST(Builtins, UnknownNameListsValidOnes) {
    try {
        builtin_algebra("noSuchAlgebra");
        FAIL() << "expected an exception";
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("classical1d"), std::string::npos);
        EXPECT_NE(msg.find("quantumAhat"), std::string::npos);
    }
}

TEST(Builtins, SigmaRequiredAndBounded) {
    EXPECT_THROW(builtin_algebra(Builtin::QuantumPQ), std::invalid_argument);
    EXPECT_THROW(builtin_algebra(Builtin::QuantumPQ, Rational(1, 2)), std::invalid_argument);
    EXPECT_NO_THROW(builtin_algebra(Builtin::QuantumPQ, Rational(1)));
}

TEST(Multiply, TableExamples) {
    const auto pq = builtin_algebra(Builtin::QuantumPQ, Rational(4));
    const LinComb dP{{0, Scalar::one()}}, dQ{{1, Scalar::one()}};
    EXPECT_EQ(multiply(*pq, dP, dQ), time_multiple(*pq, Scalar(-GaussianRational::i())));

    const auto c1 = builtin_algebra(Builtin::Classical1d);
    const LinComb dT{{1, Scalar::one()}};
    EXPECT_TRUE(multiply(*c1, dT, dT).empty());

    const auto planar = builtin_algebra(Builtin::ClassicalPlanar);
    const LinComb sum{{0, Scalar::one()}, {1, Scalar::one()}};
    EXPECT_EQ(multiply(*planar, sum, sum), time_multiple(*planar, Scalar(2)));
}

TEST(Multiply, ForeignLabelRejected) {
    const auto c1 = builtin_algebra(Builtin::Classical1d);
    EXPECT_THROW(multiply(*c1, LinComb{{5, Scalar::one()}}, LinComb{{0, Scalar::one()}}),
                 std::invalid_argument);
}

TEST(ChangeOfBasis, IdentityKeepsTable) {
    for (const auto& [name, alg] : testing::all_builtins()) {
        SCOPED_TRACE(name);
        std::vector<LinComb> rows;
        for (int i = 0; i < alg->size(); ++i) rows.push_back(LinComb{{i, Scalar::one()}});
        const auto out = change_of_basis(*alg, rows, alg->labels());
        EXPECT_EQ(*out, *alg);
    }
}

// dZ = (-i dX + dY)/2, dZbar = (i dX + dY)/2 turns the planar table into the
// complexified one.
TEST(ChangeOfBasis, PlanarToComplexified) {
    const auto planar = builtin_algebra(Builtin::ClassicalPlanar);
    const Scalar half(Rational(1, 2));
    const Scalar ihalf(GaussianRational(Rational(0), Rational(1, 2)));
    const std::vector<LinComb> rows{
        LinComb{{0, -ihalf}, {1, half}},
        LinComb{{0, ihalf}, {1, half}},
        LinComb{{2, Scalar::one()}},
    };
    const auto out = change_of_basis(*planar, rows, {"dZ", "dZbar", "dT"});
    EXPECT_EQ(*out, *builtin_algebra(Builtin::ClassicalZ));
}

// dAhat = (i dPhat + dQhat)/2, dAhatDag = (-i dPhat + dQhat)/2 turns the
// normalized pair table into the symbolic one evaluated at this sigma.
TEST(ChangeOfBasis, NormalizedPairToLadder) {
    const Rational s2(4);
    const auto pqhat = builtin_algebra(Builtin::QuantumPQhat, s2);
    const Scalar half(Rational(1, 2));
    const Scalar ihalf(GaussianRational(Rational(0), Rational(1, 2)));
    const std::vector<LinComb> rows{
        LinComb{{0, ihalf}, {1, half}},
        LinComb{{0, -ihalf}, {1, half}},
        LinComb{{2, Scalar::one()}},
    };
    const auto out = change_of_basis(*pqhat, rows, {"dAhat", "dAhatDag", "dT"});
    // sigma+- = (1 +- 1/4)/2
    const auto expected =
        evaluate_algebra(*builtin_algebra(Builtin::QuantumAhat), Rational(5, 8), Rational(3, 8));
    EXPECT_EQ(*out, *expected);
}

TEST(ChangeOfBasis, PairToLadderUnnormalized) {
    const Rational s2(4);
    const auto pq = builtin_algebra(Builtin::QuantumPQ, s2);
    const Scalar half(Rational(1, 2));
    const Scalar ihalf(GaussianRational(Rational(0), Rational(1, 2)));
    const std::vector<LinComb> rows{
        LinComb{{0, ihalf}, {1, half}},
        LinComb{{0, -ihalf}, {1, half}},
        LinComb{{2, Scalar::one()}},
    };
    const auto out = change_of_basis(*pq, rows, {"dA", "dAdag", "dT"});
    EXPECT_EQ(*out, *builtin_algebra(Builtin::QuantumA, s2));
}

TEST(ChangeOfBasis, SingularMatrixRejected) {
    const auto planar = builtin_algebra(Builtin::ClassicalPlanar);
    const std::vector<LinComb> rows{
        LinComb{{0, Scalar::one()}, {1, Scalar::one()}},
        LinComb{{0, Scalar::one()}, {1, Scalar::one()}},
        LinComb{{2, Scalar::one()}},
    };
    EXPECT_THROW(change_of_basis(*planar, rows, {"u", "v", "dT"}), std::invalid_argument);
}

TEST(ChangeOfBasis, TimeMustBeFixed) {
    const auto planar = builtin_algebra(Builtin::ClassicalPlanar);
    const std::vector<LinComb> rows{
        LinComb{{0, Scalar::one()}},
        LinComb{{1, Scalar::one()}},
        LinComb{{2, Scalar(2)}},  // scales time
    };
    EXPECT_THROW(change_of_basis(*planar, rows, {"dX", "dY", "dT"}), std::invalid_argument);
}

TEST(ChangeOfBasis, RandomInvertibleRoundTrip) {
    // Transform by a random invertible rational matrix fixing time, then
    // transform back; the table must return exactly.
    testing::Rng rng(99);
    const auto alg = builtin_algebra(Builtin::QuantumAhat);
    for (int iter = 0; iter < 20; ++iter) {
        std::vector<LinComb> rows(3);
        rows[2] = LinComb{{2, Scalar::one()}};
        std::uniform_int_distribution<int> coef(-2, 2);
        int a, b, c, d;
        do {
            a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
        } while (a * d - b * c == 0);
        rows[0] = LinComb{};
        rows[1] = LinComb{};
        lincomb_add(rows[0], 0, Scalar(a));
        lincomb_add(rows[0], 1, Scalar(b));
        lincomb_add(rows[1], 0, Scalar(c));
        lincomb_add(rows[1], 1, Scalar(d));
        const auto fwd = change_of_basis(*alg, rows, {"u", "v", "dT"});
        // invert the 2x2 block exactly
        const Rational det = Rational(a) * d - Rational(b) * c;
        std::vector<LinComb> back(3);
        back[2] = LinComb{{2, Scalar::one()}};
        lincomb_add(back[0], 0, Scalar(Rational(d) / det));
        lincomb_add(back[0], 1, Scalar(Rational(-b) / det));
        lincomb_add(back[1], 0, Scalar(Rational(-c) / det));
        lincomb_add(back[1], 1, Scalar(Rational(a) / det));
        const auto rt = change_of_basis(*fwd, back, alg->labels());
        EXPECT_EQ(*rt, *alg);
    }
}

// Entrywise agreement of the symbolic ladder table at sigma = infinity with
// the complexified classical one, after renaming.
TEST(Builtins, LadderDeformsToComplexifiedClassical) {
    const auto ahat = builtin_algebra(Builtin::QuantumAhat);
    const auto at_inf = evaluate_algebra(*ahat, Rational(1, 2), Rational(1, 2));
    const auto renamed = rename_labels(*at_inf, {"dZ", "dZbar", "dT"});
    EXPECT_EQ(*renamed, *builtin_algebra(Builtin::ClassicalZ));
}

TEST(Serialize, AlgebraJsonRoundTrip) {
    for (const auto& [name, alg] : testing::all_builtins()) {
        SCOPED_TRACE(name);
        const Json j = algebra_to_json(*alg);
        const auto back = algebra_from_json(j);
        EXPECT_EQ(*back, *alg);
    }
}

TEST(Serialize, AcceptsSingleTermCoefObject) {
    // The documented schema example writes "coef" as one bare term object.
    const Json j{{"labels", {"dX", "dT"}},
                 {"time", "dT"},
                 {"table", Json::array({Json{{"left", "dX"},
                                             {"right", "dX"},
                                             {"result", Json::array({Json{
                                                            {"label", "dT"},
                                                            {"coef", Json{{"ep", 0},
                                                                          {"em", 0},
                                                                          {"re", "1"},
                                                                          {"im", "0"}}},
                                                        }})}}})}};
    const auto alg = algebra_from_json(j);
    EXPECT_EQ(*alg, *builtin_algebra(Builtin::Classical1d));
}

TEST(Construction, ValidatesLabels) {
    EXPECT_THROW(ItoAlgebra({"dX", "dX"}, "dX", {}), std::invalid_argument);
    EXPECT_THROW(ItoAlgebra({"dX"}, "dT", {}), std::invalid_argument);
    std::map<std::pair<int, int>, LinComb> bad;
    bad[{0, 5}] = LinComb{{0, Scalar::one()}};
    EXPECT_THROW(ItoAlgebra({"dX", "dT"}, "dT", bad), std::invalid_argument);
}

// User-defined tables are allowed to do anything, including not annihilating
// time.
TEST(Construction, UserTableNeedNotAnnihilateTime) {
    std::map<std::pair<int, int>, LinComb> t;
    t[{0, 1}] = LinComb{{0, Scalar::one()}};  // dU * dT = dU
    const ItoAlgebra alg({"dU", "dT"}, "dT", std::move(t));
    EXPECT_FALSE(alg.time_is_annihilating());
}

}  // namespace
}  // namespace sticky
