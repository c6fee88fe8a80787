#include "efinv/subspace.hpp"

#include <string>

namespace efinv {

namespace {

void require_ambient(const Subspace& m, const Subspace& n, const char* what)
{
    if (m.ambient_dim() != n.ambient_dim())
        throw ShapeMismatch(std::string(what) + ": subspaces live in C^" + std::to_string(m.ambient_dim()) +
                            " and C^" + std::to_string(n.ambient_dim()));
}

} // namespace

Subspace Subspace::span_of(const ComplexMatrix& generators, const ToleranceContext& tol)
{
    if (generators.cols() == 0)
        return zero(generators.rows());
    return range_of(generators, tol);
}

Subspace Subspace::from_orthonormal(ComplexMatrix basis, const ToleranceContext& tol)
{
    require_finite(basis, "Subspace::from_orthonormal");
    const Index d = basis.cols();
    if (d > basis.rows())
        throw BadParams("Subspace: more basis vectors than the ambient dimension");
    const double err = (basis.adjoint() * basis - identity(d)).norm();
    if (err > tol.residual_threshold(1.0))
        throw BadParams("Subspace: basis is not orthonormal (residual " + std::to_string(err) + ")");
    return Subspace(std::move(basis));
}

Subspace Subspace::zero(Index ambient_dim)
{
    return Subspace(ComplexMatrix(ambient_dim, 0));
}

Subspace Subspace::whole(Index ambient_dim)
{
    return Subspace(identity(ambient_dim));
}

Subspace range_of(const SvdFactorization& f)
{
    return Subspace::from_orthonormal(f.U.leftCols(f.rank));
}

Subspace nullspace_of(const SvdFactorization& f)
{
    return Subspace::from_orthonormal(f.V.rightCols(f.cols() - f.rank));
}

Subspace range_of(const ComplexMatrix& a, const ToleranceContext& tol)
{
    if (a.cols() == 0)
        return Subspace::zero(a.rows());
    return range_of(svd(a, tol));
}

Subspace nullspace_of(const ComplexMatrix& a, const ToleranceContext& tol)
{
    if (a.rows() == 0)
        return Subspace::whole(a.cols());
    return nullspace_of(svd(a, tol));
}

Subspace orthogonal_complement(const Subspace& m, const ToleranceContext& tol)
{
    if (m.dim() == 0)
        return Subspace::whole(m.ambient_dim());
    // An orthonormal basis has rank exactly d; the trailing columns of V span the complement.
    const SvdFactorization f = svd(m.basis().adjoint(), tol);
    return Subspace::from_orthonormal(f.V.rightCols(m.ambient_dim() - m.dim()));
}

ComplexMatrix orthogonal_projector(const Subspace& m)
{
    if (m.dim() == 0)
        return zeros(m.ambient_dim(), m.ambient_dim());
    return m.basis() * m.basis().adjoint();
}

bool is_direct_sum(const Subspace& m, const Subspace& n, const ToleranceContext& tol)
{
    require_ambient(m, n, "is_direct_sum");
    const Index dim = m.ambient_dim();
    if (m.dim() + n.dim() != dim)
        return false;
    if (dim == 0)
        return true;
    ComplexMatrix stacked(dim, dim);
    stacked << m.basis(), n.basis();
    return numerical_rank(stacked, tol) == dim;
}

ComplexMatrix oblique_projector(const Subspace& m, const Subspace& n, const ToleranceContext& tol)
{
    require_ambient(m, n, "oblique_projector");
    const Index dim = m.ambient_dim();
    if (m.dim() + n.dim() != dim)
        throw NotComplementary("oblique_projector: dim M + dim N = " + std::to_string(m.dim() + n.dim()) +
                               " but the ambient dimension is " + std::to_string(dim));
    if (m.dim() == 0)
        return zeros(dim, dim);
    if (n.dim() == 0)
        return identity(dim);

    ComplexMatrix stacked(dim, dim);
    stacked << m.basis(), n.basis();
    const SvdFactorization f = svd(stacked, tol);
    if (f.rank < dim)
        throw NotComplementary("oblique_projector: M and N intersect nontrivially");
    // stacked^{-1} = V diag(1/sigma) U^*
    const ComplexMatrix inv = f.V * f.sigma.cwiseInverse().asDiagonal() * f.U.adjoint();
    return m.basis() * inv.topRows(m.dim());
}

double subspace_distance(const Subspace& m, const Subspace& n)
{
    require_ambient(m, n, "subspace_distance");
    return (orthogonal_projector(m) - orthogonal_projector(n)).norm();
}

bool same_subspace(const Subspace& m, const Subspace& n, const ToleranceContext& tol)
{
    return m.dim() == n.dim() && subspace_distance(m, n) < tol.residual_tol;
}

double inclusion_residual(const Subspace& small, const Subspace& big)
{
    require_ambient(small, big, "inclusion_residual");
    if (small.dim() == 0)
        return 0.0;
    // ||(I - P_big) B_small||_F equals ||(I - P_big) P_small||_F for orthonormal B_small.
    const ComplexMatrix outside = small.basis() - big.basis() * (big.basis().adjoint() * small.basis());
    return outside.norm();
}

bool is_subspace_of(const Subspace& small, const Subspace& big, const ToleranceContext& tol)
{
    return inclusion_residual(small, big) < tol.residual_tol;
}

} // namespace efinv
