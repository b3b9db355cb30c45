#include <gtest/gtest.h>

#include "sparseginv/lp.hpp"
#include "sparseginv/rank1.hpp"
#include "test_support.hpp"

using namespace sparseginv;
using testsupport::Generator;

TEST(SolveRank1, Scalar)
{
    const auto [res, cert] = solve_rank1(Matrix{{2}});
    EXPECT_DOUBLE_EQ(res.H(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(res.one_norm, 0.5);
    EXPECT_DOUBLE_EQ(cert.dual_objective, 0.5);
}

TEST(SolveRank1, PositiveFactors)
{
    // r = (1, 2), s = (1, 3): i* = 2, j* = 2, H = e_2 e_2^T / 6.
    const Matrix a{{1, 3}, {2, 6}};
    const auto [res, cert] = solve_rank1(a);
    EXPECT_EQ(cert.i_star, 1u);
    EXPECT_EQ(cert.j_star, 1u);
    EXPECT_LT(testsupport::max_abs_diff(res.H, Matrix{{0, 0}, {0, 1.0 / 6.0}}), 1e-15);
    EXPECT_NEAR(res.one_norm, 1.0 / 6.0, 1e-15);
    EXPECT_EQ(res.nnz, 1u);
    EXPECT_TRUE(res.reflexive);
    EXPECT_EQ(res.method, Method::rank1);
    EXPECT_NEAR(min_norm_ginv_lp(a).second.objective, 1.0 / 6.0, 1e-9);
}

TEST(SolveRank1, MixedSigns)
{
    // r = (1, -2), s = (3, 1): i* = 1, j* = 2, single entry -1/6 at (1, 2).
    const Matrix a{{3, 1}, {-6, -2}};
    const auto [res, cert] = solve_rank1(a);
    EXPECT_EQ(cert.i_star, 0u);
    EXPECT_EQ(cert.j_star, 1u);
    EXPECT_NEAR(res.H(0, 1), -1.0 / 6.0, 1e-15);
    EXPECT_EQ(res.nnz, 1u);
    EXPECT_NEAR(res.one_norm, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(min_norm_ginv_lp(a).second.objective, 1.0 / 6.0, 1e-9);
}

TEST(SolveRank1, RejectsOtherRanks)
{
    for (const Matrix& a : {testsupport::tall_3x2(), Matrix(2, 2)}) {
        try {
            solve_rank1(a);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), ErrorCode::NotRankOne);
        }
    }
}

TEST(SolveRank1, FactorizationReconstructs)
{
    const Matrix a{{3, 1}, {-6, -2}, {0, 0}};
    const auto f = factor_rank1(a);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            EXPECT_NEAR(f.r_vec[i] * f.s_vec[j], a(i, j), 1e-14);
        }
    }
}

TEST(SolveRank1, ArgmaxInvariantUnderPositiveScaling)
{
    Generator gen(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix a = gen.low_rank(gen.size(1, 6), gen.size(1, 6), 1);
        const auto c1 = solve_rank1(a).second;
        const auto c2 = solve_rank1(a * gen.real(0.01, 100.0)).second;
        EXPECT_EQ(c1.i_star, c2.i_star);
        EXPECT_EQ(c1.j_star, c2.j_star);
    }
}

TEST(SolveRank1, RandomMatchesLpAndDualIsFeasible)
{
    Generator gen(17);
    const Tolerances tol;
    for (int trial = 0; trial < 300; ++trial) {
        const Matrix a = gen.low_rank(gen.size(1, 7), gen.size(1, 7), 1, -2.2, 2.2);
        ASSERT_EQ(rank(a, tol), 1u);
        const auto [res, cert] = solve_rank1(a, tol);
        const double lp = min_norm_ginv_lp(a, tol).second.objective;
        EXPECT_NEAR(res.one_norm, lp, 1e-7) << "trial " << trial;
        EXPECT_EQ(res.nnz, 1u);
        EXPECT_TRUE(res.reflexive);

        const Rank1Dual dual = rank1_dual(a, cert);
        EXPECT_LE(rank1_dual_violation(a, dual), 1e-9);
        EXPECT_NEAR(inner(a, dual.W), res.one_norm, tol.residual_tol * res.one_norm);
        EXPECT_NEAR(cert.dual_objective, res.one_norm, tol.residual_tol * res.one_norm);
    }
}
