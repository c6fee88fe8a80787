#pragma once

#include <cstdint>

#include "efinv/dense_core.hpp"
#include "efinv/subspace.hpp"

namespace efinv {

/// A^dagger = V [Sigma^{-1} 0; 0 0] U^*.
ComplexMatrix moore_penrose(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// Draws members of A{1} as G = A^dagger + Z - A^dagger A Z A A^dagger.
///
/// Z is pseudo-random, generated from a std::mt19937_64 keyed by (seed, draw),
/// so a given draw index always yields the same matrix regardless of order.
class InnerInverseSampler {
public:
    InnerInverseSampler(const ComplexMatrix& a, std::uint64_t seed, const ToleranceContext& tol = {});

    const ComplexMatrix& base() const { return base_; }
    const ComplexMatrix& left_proj() const { return left_proj_; }
    const ComplexMatrix& right_proj() const { return right_proj_; }
    std::uint64_t seed() const { return seed_; }

    ComplexMatrix sample(std::uint64_t draw) const;
    ComplexMatrix with_parameter(const ComplexMatrix& z) const;

private:
    ComplexMatrix base_;        // A^dagger (n x m)
    ComplexMatrix left_proj_;   // A^dagger A (n x n)
    ComplexMatrix right_proj_;  // A A^dagger (m x m)
    std::uint64_t seed_;
};

ComplexMatrix sample_inner_inverse(const InnerInverseSampler& sampler, std::uint64_t draw);

/// A^l (A^{2l+1})^dagger A^l with l = Ind(A). The pseudoinverse is truncated
/// at rank(A^l), which equals rank(A^{2l+1}) by definition of the index.
ComplexMatrix drazin(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// Drazin inverse for Ind(A) <= 1; throws IndexTooLarge otherwise.
ComplexMatrix group_inverse(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// Whether A T (+) S = C^m holds numerically (together with the dimension
/// requirements dim T <= rank A and dim S = m - dim T).
bool outer_prescribed_exists(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                             const ToleranceContext& tol = {});

/// A^(2)_{T,S}: the outer inverse with range T and nullspace S.
/// Exists iff A T (+) S = C^m; throws NotExistent otherwise.
ComplexMatrix outer_prescribed(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                               const ToleranceContext& tol = {});

/// Residuals of the projector characterization of A^(2)_{T,S}:
/// XAX = X, XA = P_{T, (A^*(S^perp))^perp}, AX = P_{AT, S}.
struct OuterResiduals {
    double outer = 0.0;
    double xa_projector = 0.0;
    double ax_projector = 0.0;
};

OuterResiduals outer_prescribed_residuals(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                                          const ComplexMatrix& x, const ToleranceContext& tol = {});

} // namespace efinv
