#include <gtest/gtest.h>

#include "efinv/classical.hpp"
#include "generators.hpp"
#include "matrix_assertions.hpp"

using namespace efinv;
using namespace efinv::testing;

namespace {

double scaled(double residual, double scale)
{
    return residual / std::max(1.0, scale);
}

} // namespace

TEST(MoorePenrose, Examples)
{
    EXPECT_MAT_NEAR(moore_penrose(identity(3)), identity(3), 1e-14);
    EXPECT_MAT_NEAR(moore_penrose(real_diag({2, 4, 0})), real_diag({0.5, 0.25, 0}), 1e-14);

    ComplexMatrix expected = zeros(3, 4);
    expected(0, 0) = expected(1, 1) = 0.5;
    EXPECT_MAT_NEAR(moore_penrose(example_averaging(2.0).a), expected, 1e-14);
}

TEST(MoorePenrose, PenroseEquations)
{
    Rng rng(10);
    const ToleranceContext tol;
    for (int trial = 0; trial < 40; ++trial) {
        const Index m = 1 + static_cast<Index>(rng() % 9), n = 1 + static_cast<Index>(rng() % 9);
        const Index r = static_cast<Index>(rng() % (std::min(m, n) + 1));
        const ComplexMatrix a = random_rank(m, n, r, rng);
        const ComplexMatrix x = moore_penrose(a);
        const double s = a.norm();
        EXPECT_LT(scaled((a * x * a - a).norm(), s), tol.residual_tol);
        EXPECT_LT(scaled((x * a * x - x).norm(), s), tol.residual_tol);
        EXPECT_LT(scaled((a * x - (a * x).adjoint()).norm(), s), tol.residual_tol);
        EXPECT_LT(scaled((x * a - (x * a).adjoint()).norm(), s), tol.residual_tol);
    }
}

TEST(InnerInverseSampler, ZeroParameterGivesPseudoinverse)
{
    Rng rng(11);
    const ComplexMatrix a = random_rank(4, 3, 2, rng);
    const InnerInverseSampler s(a, 5);
    EXPECT_MAT_NEAR(s.with_parameter(zeros(3, 4)), moore_penrose(a), 0.0);
    EXPECT_MAT_NEAR(s.left_proj(), s.base() * a, 1e-14);
    EXPECT_MAT_NEAR(s.right_proj(), a * s.base(), 1e-14);
    EXPECT_EQ(s.seed(), 5u);
}

TEST(InnerInverseSampler, InvertibleFamilyCollapses)
{
    Rng rng(12);
    const ComplexMatrix a = random_complex(3, 3, rng);
    const InnerInverseSampler s(a, 1);
    for (std::uint64_t d = 0; d < 5; ++d)
        EXPECT_MAT_NEAR(s.sample(d), a.inverse(), 1e-10);
}

TEST(InnerInverseSampler, SingularDiagonalDraws)
{
    const ComplexMatrix a = real_diag({1, 0});
    const InnerInverseSampler s(a, 1);
    std::vector<ComplexMatrix> draws;
    for (std::uint64_t d = 0; d < 5; ++d) {
        draws.push_back(sample_inner_inverse(s, d));
        EXPECT_LT((a * draws.back() * a - a).norm(), 1e-12);
    }
    for (std::size_t i = 0; i < draws.size(); ++i)
        for (std::size_t j = i + 1; j < draws.size(); ++j)
            EXPECT_GT((draws[i] - draws[j]).norm(), 1e-6);
}

TEST(InnerInverseSampler, DrawsAreReproducibleAndOrderIndependent)
{
    Rng rng(13);
    const ComplexMatrix a = random_rank(5, 4, 2, rng);
    const InnerInverseSampler s1(a, 99), s2(a, 99), s3(a, 100);
    const ComplexMatrix late = s1.sample(7);
    s1.sample(0);
    EXPECT_MAT_NEAR(s2.sample(7), late, 0.0);
    EXPECT_MAT_NEAR(s1.sample(7), late, 0.0);
    EXPECT_GT((s3.sample(7) - late).norm(), 1e-6);
}

TEST(InnerInverseSampler, SamplesAreInnerInverses)
{
    Rng rng(14);
    const ToleranceContext tol;
    for (int trial = 0; trial < 20; ++trial) {
        const Index m = 2 + static_cast<Index>(rng() % 7), n = 2 + static_cast<Index>(rng() % 7);
        const ComplexMatrix a = random_rank(m, n, 1 + static_cast<Index>(rng() % std::min(m, n)), rng);
        const InnerInverseSampler s(a, static_cast<std::uint64_t>(trial));
        for (std::uint64_t d = 0; d < 10; ++d)
            EXPECT_LT((a * s.sample(d) * a - a).norm(), tol.residual_threshold(a.norm()));
    }
}

TEST(Drazin, Examples)
{
    Rng rng(15);
    const ComplexMatrix inv = random_complex(4, 4, rng);
    EXPECT_MAT_NEAR(drazin(inv), inv.inverse(), 1e-10);
    EXPECT_MAT_NEAR(drazin(jordan_nilpotent(2)), zeros(2, 2), 0.0);
    const ComplexMatrix idem = make_matrix({{1, 1}, {0, 0}});
    EXPECT_MAT_NEAR(drazin(idem), idem, 1e-14);
    EXPECT_THROW(drazin(zeros(2, 3)), NotSquare);
}

TEST(Drazin, DefiningEquationsAndSpectralProjector)
{
    Rng rng(16);
    const ToleranceContext tol;
    for (int trial = 0; trial < 40; ++trial) {
        const Index n = 3 + static_cast<Index>(rng() % 8);
        const int k = 1 + static_cast<int>(rng() % 3);
        const ComplexMatrix a = random_with_index(n, k, rng);
        const ComplexMatrix x = drazin(a);
        const double scale = std::max(a.norm(), x.norm());
        const ComplexMatrix ak = matrix_power(a, k);
        EXPECT_LT((x * a * x - x).norm(), tol.residual_threshold(x.norm() * scale)) << "trial " << trial;
        EXPECT_LT((a * x - x * a).norm(), tol.residual_threshold(scale)) << "trial " << trial;
        EXPECT_LT((a * ak * x - ak).norm(), tol.residual_threshold(ak.norm() * scale)) << "trial " << trial;

        const SvdFactorization fk = power_svd(a, k);
        const ComplexMatrix p = oblique_projector(range_of(fk), nullspace_of(fk));
        EXPECT_LT((a * x - p).norm(), tol.residual_threshold(p.norm())) << "trial " << trial;
        EXPECT_LT((x * a - p).norm(), tol.residual_threshold(p.norm())) << "trial " << trial;
    }
}

TEST(GroupInverse, Examples)
{
    EXPECT_MAT_NEAR(group_inverse(identity(2)), identity(2), 1e-14);
    const ComplexMatrix idem = make_matrix({{1, 1}, {0, 0}});
    EXPECT_MAT_NEAR(group_inverse(idem), idem, 1e-14);
    try {
        group_inverse(jordan_nilpotent(2));
        FAIL() << "expected IndexTooLarge";
    } catch (const IndexTooLarge& e) {
        EXPECT_EQ(e.index(), 2);
    }
}

TEST(GroupInverse, ProjectorIdentity)
{
    Rng rng(17);
    const ToleranceContext tol;
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_with_index(2 + static_cast<Index>(rng() % 7), 1, rng);
        const ComplexMatrix x = group_inverse(a);
        EXPECT_MAT_NEAR(x, drazin(a), 0.0);
        const ComplexMatrix p = oblique_projector(range_of(a), nullspace_of(a));
        EXPECT_LT((a * x - p).norm(), tol.residual_threshold(p.norm()));
        EXPECT_LT((x * a - p).norm(), tol.residual_threshold(p.norm()));
    }
}

TEST(OuterPrescribed, ReproducesPseudoinverse)
{
    Rng rng(18);
    for (int trial = 0; trial < 20; ++trial) {
        const Index m = 2 + static_cast<Index>(rng() % 6), n = 2 + static_cast<Index>(rng() % 6);
        const ComplexMatrix a = random_rank(m, n, 1 + static_cast<Index>(rng() % std::min(m, n)), rng);
        const ComplexMatrix x = outer_prescribed(a, range_of(a.adjoint()), nullspace_of(a.adjoint()));
        EXPECT_MAT_NEAR(x, moore_penrose(a), 1e-10);
    }
}

TEST(OuterPrescribed, ReproducesDrazin)
{
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const ComplexMatrix a = random_with_index(3 + static_cast<Index>(rng() % 6), k, rng);
        const SvdFactorization fk = power_svd(a, k);
        const ComplexMatrix x = outer_prescribed(a, range_of(fk), nullspace_of(fk));
        EXPECT_MAT_NEAR(x, drazin(a), 1e-9 * std::max(1.0, x.norm()));
    }
}

TEST(OuterPrescribed, NonComplementaryPairDoesNotExist)
{
    const ComplexMatrix a = real_diag({1, 0});
    const Subspace e1 = Subspace::span_of(make_matrix({{1}, {0}}));
    EXPECT_FALSE(outer_prescribed_exists(a, e1, e1));
    EXPECT_THROW(outer_prescribed(a, e1, e1), NotExistent);
    // dim T exceeds rank A.
    EXPECT_THROW(outer_prescribed(a, Subspace::whole(2), Subspace::zero(2)), NotExistent);
    EXPECT_THROW(outer_prescribed(a, Subspace::whole(3), Subspace::zero(2)), ShapeMismatch);
}

TEST(OuterPrescribed, ZeroDimensionalRange)
{
    const ComplexMatrix x = outer_prescribed(real_diag({1, 2}), Subspace::zero(2), Subspace::whole(2));
    EXPECT_MAT_NEAR(x, zeros(2, 2), 0.0);
}

TEST(OuterPrescribed, ProjectorCharacterization)
{
    Rng rng(20);
    const ToleranceContext tol;
    for (int trial = 0; trial < 30; ++trial) {
        const Index m = 2 + static_cast<Index>(rng() % 6), n = 2 + static_cast<Index>(rng() % 6);
        const Index r = 1 + static_cast<Index>(rng() % std::min(m, n));
        const Index s = 1 + static_cast<Index>(rng() % r);
        const ComplexMatrix a = random_rank(m, n, r, rng);
        const Subspace t = Subspace::span_of(random_complex(n, s, rng));
        const Subspace sp = Subspace::span_of(random_complex(m, m - s, rng));
        if (!outer_prescribed_exists(a, t, sp))
            continue;
        const ComplexMatrix x = outer_prescribed(a, t, sp);
        EXPECT_TRUE(same_subspace(range_of(x), t));
        EXPECT_TRUE(same_subspace(nullspace_of(x), sp));
        const OuterResiduals res = outer_prescribed_residuals(a, t, sp, x);
        const double scale = std::max({1.0, x.norm(), a.norm()});
        EXPECT_LT(res.outer, tol.residual_tol * scale * scale * scale);
        EXPECT_LT(res.xa_projector, tol.residual_tol * scale * scale);
        EXPECT_LT(res.ax_projector, tol.residual_tol * scale * scale);
    }
}
