#pragma once

#include "efinv/dense_core.hpp"

namespace efinv {

/// A subspace of C^n held through an orthonormal basis (n x d, d may be 0).
class Subspace {
public:
    /// Orthonormalizes the column span of `generators` (via SVD).
    static Subspace span_of(const ComplexMatrix& generators, const ToleranceContext& tol = {});
    /// Wraps a basis that is already orthonormal. Throws BadParams otherwise.
    static Subspace from_orthonormal(ComplexMatrix basis, const ToleranceContext& tol = {});
    static Subspace zero(Index ambient_dim);
    static Subspace whole(Index ambient_dim);

    Index ambient_dim() const { return basis_.rows(); }
    Index dim() const { return basis_.cols(); }
    const ComplexMatrix& basis() const { return basis_; }

private:
    explicit Subspace(ComplexMatrix basis) : basis_(std::move(basis)) {}
    ComplexMatrix basis_;
};

Subspace range_of(const ComplexMatrix& a, const ToleranceContext& tol = {});
Subspace nullspace_of(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// Range and nullspace read off an existing factorization (rank taken from it).
Subspace range_of(const SvdFactorization& f);
Subspace nullspace_of(const SvdFactorization& f);

Subspace orthogonal_complement(const Subspace& m, const ToleranceContext& tol = {});

/// basis * basis^*; the zero matrix for d = 0.
ComplexMatrix orthogonal_projector(const Subspace& m);

/// Idempotent with range M and nullspace N. Throws NotComplementary unless M (+) N = C^n.
ComplexMatrix oblique_projector(const Subspace& m, const Subspace& n, const ToleranceContext& tol = {});

bool is_direct_sum(const Subspace& m, const Subspace& n, const ToleranceContext& tol = {});

/// ||P_M - P_N||_F; zero iff the subspaces coincide.
double subspace_distance(const Subspace& m, const Subspace& n);
bool same_subspace(const Subspace& m, const Subspace& n, const ToleranceContext& tol = {});

/// ||(I - P_big) P_small||_F; zero iff small is contained in big.
double inclusion_residual(const Subspace& small, const Subspace& big);
bool is_subspace_of(const Subspace& small, const Subspace& big, const ToleranceContext& tol = {});

} // namespace efinv
