#include <gtest/gtest.h>

#include <cmath>

#include "efinv/dense_core.hpp"
#include "generators.hpp"
#include "matrix_assertions.hpp"

using namespace efinv;
using namespace efinv::testing;

namespace {

ComplexMatrix reconstruct(const SvdFactorization& f)
{
    ComplexMatrix s = ComplexMatrix::Zero(f.rows(), f.cols());
    for (Index i = 0; i < f.sigma.size(); ++i)
        s(i, i) = f.sigma(i);
    return f.U * s * f.V.adjoint();
}

void expect_svd_invariants(const ComplexMatrix& a, const SvdFactorization& f, const ToleranceContext& tol)
{
    EXPECT_LE((f.U.adjoint() * f.U - identity(f.rows())).norm(), tol.residual_tol);
    EXPECT_LE((f.V.adjoint() * f.V - identity(f.cols())).norm(), tol.residual_tol);
    const double s1 = f.sigma.size() ? f.sigma(0) : 0.0;
    EXPECT_LE((a - reconstruct(f)).norm(), tol.residual_tol * std::max(1.0, s1));
    for (Index i = 1; i < f.sigma.size(); ++i)
        EXPECT_GE(f.sigma(i - 1), f.sigma(i));
    if (f.rank > 0)
        EXPECT_GT(f.sigma(f.rank - 1), f.cutoff);
    if (f.rank < f.sigma.size())
        EXPECT_LE(f.sigma(f.rank), f.cutoff);
}

} // namespace

TEST(Svd, Identity)
{
    const auto f = svd(identity(3));
    EXPECT_EQ(f.rank, 3);
    EXPECT_MAT_NEAR(ComplexMatrix(f.sigma.cast<Complex>()), ComplexMatrix(Eigen::VectorXcd::Ones(3)), 1e-15);
    // Any unitary pair works; the identity case must reproduce I.
    EXPECT_MAT_NEAR(ComplexMatrix(f.U * f.V.adjoint()), identity(3), 1e-14);
}

TEST(Svd, DiagonalSortsSingularValues)
{
    const auto f = svd(real_diag({2, 3, 0}));
    ASSERT_EQ(f.sigma.size(), 3);
    EXPECT_NEAR(f.sigma(0), 3.0, 1e-15);
    EXPECT_NEAR(f.sigma(1), 2.0, 1e-15);
    EXPECT_NEAR(f.sigma(2), 0.0, 1e-15);
    EXPECT_EQ(f.rank, 2);
}

TEST(Svd, RandomReconstruction)
{
    Rng rng(42);
    const ComplexMatrix a = random_complex(5, 4, rng);
    const auto f = svd(a);
    EXPECT_LT((a - reconstruct(f)).norm(), 1e-12);
    expect_svd_invariants(a, f, {});
}

TEST(Svd, ZeroMatrixHasRankZero)
{
    const auto f = svd(zeros(3, 2));
    EXPECT_EQ(f.rank, 0);
    EXPECT_EQ(f.sigma.size(), 2);
    EXPECT_EQ(f.sigma.norm(), 0.0);
}

TEST(Svd, RejectsEmptyAndNonFinite)
{
    EXPECT_THROW(svd(ComplexMatrix(0, 3)), ShapeMismatch);
    ComplexMatrix a = identity(2);
    a(0, 1) = Complex(std::nan(""), 0.0);
    EXPECT_THROW(svd(a), NonFiniteEntry);
}

TEST(Svd, InvariantsOnSeededShapes)
{
    Rng rng(2024);
    const ToleranceContext tol;
    for (int trial = 0; trial < 60; ++trial) {
        const Index m = 1 + static_cast<Index>(rng() % 9);
        const Index n = 1 + static_cast<Index>(rng() % 9);
        const Index r = static_cast<Index>(rng() % (std::min(m, n) + 1));
        const ComplexMatrix a = random_rank(m, n, r, rng);
        const auto f = svd(a, tol);
        expect_svd_invariants(a, f, tol);
        EXPECT_EQ(f.rank, r) << "trial " << trial;
        EXPECT_LE((a - reconstruct(f)).norm(), tol.residual_tol * std::max(1.0, a.norm()));
    }
}

TEST(NumericalRank, Examples)
{
    EXPECT_EQ(numerical_rank(zeros(3, 3)), 0);
    EXPECT_EQ(numerical_rank(real_diag({1, 1e-18})), 1);
    EXPECT_EQ(numerical_rank(real_diag({2, 4, 0})), 2);
}

TEST(NumericalRank, ExplicitRelativeTolerance)
{
    ToleranceContext loose;
    loose.rank_rel_tol = 1e-3;
    EXPECT_EQ(numerical_rank(real_diag({1, 1e-4, 1e-2}), loose), 2);
    EXPECT_EQ(numerical_rank(real_diag({1, 1e-4, 1e-2})), 3);
}

TEST(NumericalRank, InvariantUnderUnitaryMultiplication)
{
    Rng rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 2 + static_cast<Index>(rng() % 8);
        const Index r = static_cast<Index>(rng() % (n + 1));
        const ComplexMatrix a = random_rank(n, n, r, rng);
        const ComplexMatrix q1 = random_unitary(n, rng);
        const ComplexMatrix q2 = random_unitary(n, rng);
        EXPECT_EQ(numerical_rank(ComplexMatrix(q1 * a * q2)), numerical_rank(a));
    }
}

TEST(MatrixIndex, Examples)
{
    EXPECT_EQ(matrix_index(identity(3)), 0);
    EXPECT_EQ(matrix_index(jordan_nilpotent(3)), 3);
    EXPECT_EQ(matrix_index(real_diag({1, 0})), 1);
    EXPECT_EQ(matrix_index(zeros(2, 2)), 1);
    EXPECT_THROW(matrix_index(zeros(2, 3)), NotSquare);
}

TEST(MatrixIndex, RecoversConstructedIndex)
{
    Rng rng(5);
    for (int trial = 0; trial < 80; ++trial) {
        const Index n = 3 + static_cast<Index>(rng() % 8);
        const int k = static_cast<int>(rng() % 4);
        const ComplexMatrix a = random_with_index(n, k, rng);
        const int index = matrix_index(a);
        EXPECT_EQ(index, k) << "trial " << trial << " n=" << n;
        EXPECT_LE(index, n);
    }
}

TEST(MatrixIndex, RankMonotoneUnderPowers)
{
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const Index n = 3 + static_cast<Index>(rng() % 6);
        const ComplexMatrix a = random_with_index(n, static_cast<int>(rng() % 4), rng);
        Index prev = n;
        for (int k = 1; k <= n + 1; ++k) {
            const Index r = numerical_rank(matrix_power(a, k));
            EXPECT_LE(r, prev);
            prev = r;
        }
    }
}

TEST(MatrixPower, ZeroPowerIsIdentity)
{
    Rng rng(3);
    const ComplexMatrix a = random_complex(4, 4, rng);
    EXPECT_MAT_NEAR(matrix_power(a, 0), identity(4), 0.0);
    EXPECT_MAT_NEAR(matrix_power(a, 2), ComplexMatrix(a * a), 1e-13);
    EXPECT_THROW(matrix_power(a, -1), BadParams);
}

TEST(FrobeniusDistance, Examples)
{
    EXPECT_EQ(frobenius_distance(identity(2), identity(2)), 0.0);
    EXPECT_NEAR(frobenius_distance(zeros(2, 2), identity(2)), std::sqrt(2.0), 1e-15);
    Rng rng(8);
    const Index n = 4;
    const ComplexMatrix a = random_complex(n, n, rng);
    const ComplexMatrix b = a + 1e-13 * identity(n);
    EXPECT_LE(frobenius_distance(a, b), 2e-13 * std::sqrt(static_cast<double>(n)));
    EXPECT_EQ(frobenius_distance(a, b), frobenius_distance(b, a));
    EXPECT_THROW(frobenius_distance(identity(2), identity(3)), ShapeMismatch);
}

TEST(Tolerance, DefaultsAndValidation)
{
    ToleranceContext tol;
    EXPECT_EQ(tol.residual_tol, 1e-10);
    EXPECT_EQ(tol.idempotency_tol, 1e-10);
    EXPECT_DOUBLE_EQ(tol.rank_rel_tol_for(3, 7), 7 * std::numeric_limits<double>::epsilon());
    tol.residual_tol = -1.0;
    EXPECT_THROW(tol.validate(), BadParams);
}

TEST(MakeMatrix, RejectsRaggedAndNonFinite)
{
    EXPECT_THROW(make_matrix({{1, 2}, {3}}), ShapeMismatch);
    EXPECT_THROW(make_matrix({{1, std::numeric_limits<double>::infinity()}}), NonFiniteEntry);
}

TEST(PowerRank, VanishingPowerOfNilpotentMatrix)
{
    // Similar to a Jordan block: A^3 is zero up to rounding, which a cutoff
    // relative to sigma_1(A^3) alone would rank as full.
    Rng rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_with_index(3, 3, rng);
        EXPECT_EQ(power_rank(a, 1), 2);
        EXPECT_EQ(power_rank(a, 2), 1);
        EXPECT_EQ(power_rank(a, 3), 0);
        EXPECT_EQ(matrix_index(a), 3);
    }
    EXPECT_EQ(power_rank(identity(2), 0), 2);
}
