#include <gtest/gtest.h>

#include "efinv/subspace.hpp"
#include "generators.hpp"
#include "matrix_assertions.hpp"

using namespace efinv;
using namespace efinv::testing;

namespace {

ComplexMatrix columns(std::initializer_list<std::initializer_list<Complex>> rows)
{
    return make_matrix(rows);
}

} // namespace

TEST(RangeOf, Examples)
{
    EXPECT_EQ(range_of(identity(3)).dim(), 3);
    EXPECT_EQ(range_of(zeros(3, 2)).dim(), 0);
    EXPECT_EQ(range_of(zeros(3, 2)).ambient_dim(), 3);

    const auto ex = example_averaging(1.0);
    const Subspace r = range_of(ex.a);
    EXPECT_EQ(r.dim(), 2);
    const Subspace e12 = Subspace::span_of(columns({{1, 0}, {0, 1}, {0, 0}, {0, 0}}));
    EXPECT_LT(subspace_distance(r, e12), 1e-12);
}

TEST(NullspaceOf, Examples)
{
    EXPECT_EQ(nullspace_of(identity(3)).dim(), 0);
    EXPECT_EQ(nullspace_of(zeros(2, 3)).dim(), 3);
    const Subspace k = nullspace_of(real_diag({2, 4, 0}));
    ASSERT_EQ(k.dim(), 1);
    EXPECT_MAT_NEAR(orthogonal_projector(k), real_diag({0, 0, 1}), 1e-14);
}

TEST(OrthogonalProjector, Examples)
{
    EXPECT_MAT_NEAR(orthogonal_projector(Subspace::whole(3)), identity(3), 0.0);
    EXPECT_MAT_NEAR(orthogonal_projector(Subspace::span_of(columns({{1}, {0}}))), real_diag({1, 0}), 1e-15);
    EXPECT_MAT_NEAR(orthogonal_projector(Subspace::zero(3)), zeros(3, 3), 0.0);

    Rng rng(7);
    const ComplexMatrix a = random_complex(4, 2, rng);
    const ComplexMatrix p = orthogonal_projector(range_of(a));
    EXPECT_LT((p * a - a).norm(), 1e-12);
}

TEST(OrthogonalProjector, HermitianAndIdempotent)
{
    Rng rng(8);
    const ToleranceContext tol;
    for (int trial = 0; trial < 25; ++trial) {
        const Index n = 2 + static_cast<Index>(rng() % 8);
        const Index d = static_cast<Index>(rng() % (n + 1));
        const ComplexMatrix p = orthogonal_projector(Subspace::span_of(random_complex(n, d, rng)));
        EXPECT_LT((p - p.adjoint()).norm(), tol.idempotency_tol);
        EXPECT_LT((p * p - p).norm(), tol.idempotency_tol);
    }
}

TEST(ObliqueProjector, Examples)
{
    const Subspace e1 = Subspace::span_of(columns({{1}, {0}}));
    const Subspace e2 = Subspace::span_of(columns({{0}, {1}}));
    const Subspace diag = Subspace::span_of(columns({{1}, {1}}));
    EXPECT_MAT_NEAR(oblique_projector(e1, e2), real_diag({1, 0}), 1e-15);
    // P e1 = e1 and P (e1 + e2) = 0 by hand.
    EXPECT_MAT_NEAR(oblique_projector(e1, diag), make_matrix({{1, -1}, {0, 0}}), 1e-14);

    const auto ex = example_square(2.0, 4.0);
    EXPECT_MAT_NEAR(oblique_projector(range_of(ex.e), nullspace_of(ex.e)), ex.e, 1e-14);
}

TEST(ObliqueProjector, RejectsNonComplementaryPairs)
{
    const Subspace e1 = Subspace::span_of(columns({{1}, {0}}));
    EXPECT_THROW(oblique_projector(e1, e1), NotComplementary);
    EXPECT_THROW(oblique_projector(e1, Subspace::zero(2)), NotComplementary);
    EXPECT_THROW(oblique_projector(e1, Subspace::zero(3)), ShapeMismatch);
}

TEST(ObliqueProjector, RecoversRangeAndNullspace)
{
    Rng rng(9);
    const ToleranceContext tol;
    for (int trial = 0; trial < 25; ++trial) {
        const Index n = 2 + static_cast<Index>(rng() % 7);
        const Index d = static_cast<Index>(rng() % (n + 1));
        const Subspace m = Subspace::span_of(random_complex(n, d, rng));
        const Subspace k = Subspace::span_of(random_complex(n, n - d, rng));
        const ComplexMatrix p = oblique_projector(m, k);
        EXPECT_LT((p * p - p).norm(), tol.idempotency_threshold(p.norm() * p.norm()));
        EXPECT_TRUE(same_subspace(range_of(p), m)) << "trial " << trial;
        EXPECT_TRUE(same_subspace(nullspace_of(p), k)) << "trial " << trial;

        // Basis independence: rotate the bases and rebuild.
        const Subspace m2 = Subspace::span_of(m.basis() * random_complex(d, d, rng));
        const Subspace k2 = Subspace::span_of(k.basis() * random_complex(n - d, n - d, rng));
        EXPECT_LT((oblique_projector(m2, k2) - p).norm(), tol.residual_tol * std::max(1.0, p.norm()));

        // With the orthogonal complement the oblique projector is orthogonal.
        EXPECT_LT((oblique_projector(m, orthogonal_complement(m)) - orthogonal_projector(m)).norm(),
                  tol.residual_tol);
    }
}

TEST(DirectSum, Examples)
{
    const Subspace e1 = Subspace::span_of(columns({{1}, {0}}));
    const Subspace e2 = Subspace::span_of(columns({{0}, {1}}));
    const Subspace diag = Subspace::span_of(columns({{1}, {1}}));
    EXPECT_TRUE(is_direct_sum(e1, e2));
    EXPECT_FALSE(is_direct_sum(e1, e1));
    EXPECT_TRUE(is_direct_sum(e1, diag));
    EXPECT_TRUE(is_direct_sum(Subspace::whole(3), Subspace::zero(3)));
    EXPECT_FALSE(is_direct_sum(Subspace::zero(3), Subspace::zero(3)));
}

TEST(SubspaceOps, InclusionAndComplement)
{
    const Subspace e1 = Subspace::span_of(columns({{1}, {0}, {0}}));
    const Subspace e12 = Subspace::span_of(columns({{1, 0}, {0, 1}, {0, 0}}));
    EXPECT_TRUE(is_subspace_of(e1, e12));
    EXPECT_FALSE(is_subspace_of(e12, e1));
    EXPECT_TRUE(is_subspace_of(Subspace::zero(3), e1));
    const Subspace c = orthogonal_complement(e12);
    ASSERT_EQ(c.dim(), 1);
    EXPECT_MAT_NEAR(orthogonal_projector(c), real_diag({0, 0, 1}), 1e-14);
    EXPECT_EQ(orthogonal_complement(Subspace::zero(3)).dim(), 3);
    EXPECT_EQ(orthogonal_complement(Subspace::whole(3)).dim(), 0);
}

TEST(SubspaceOps, FromOrthonormalChecksBasis)
{
    EXPECT_NO_THROW(Subspace::from_orthonormal(identity(3).leftCols(2)));
    EXPECT_THROW(Subspace::from_orthonormal(make_matrix({{1, 1}, {0, 1}})), BadParams);
}
