#pragma once

#include <complex>
#include <initializer_list>
#include <optional>

#include <Eigen/Dense>

#include "efinv/errors.hpp"

namespace efinv {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix, column-major storage. Every matrix entering the
/// library through a factory or reader is checked for finiteness.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical thresholds for rank, residual and idempotency decisions.
struct ToleranceContext {
    /// Relative singular value cutoff. Unset means max(m, n) * machine epsilon.
    std::optional<double> rank_rel_tol;
    double residual_tol = 1e-10;
    double idempotency_tol = 1e-10;

    /// Throws BadParams if any threshold is negative or not finite.
    void validate() const;

    double rank_rel_tol_for(Index rows, Index cols) const;

    /// Acceptance threshold for a residual whose natural scale is `scale`.
    double residual_threshold(double scale) const;
    double idempotency_threshold(double scale) const;
};

/// residual / threshold, with 0/0 read as 0 and x/0 as +inf.
double residual_ratio(double residual, double threshold);

struct SvdFactorization {
    ComplexMatrix U;   // m x m
    ComplexMatrix V;   // n x n
    RealVector sigma;  // min(m, n), nonincreasing
    Index rank = 0;
    double cutoff = 0.0;

    Index rows() const { return U.rows(); }
    Index cols() const { return V.rows(); }
};

/// Builds a matrix from nested row lists; rejects ragged rows and non-finite values.
ComplexMatrix make_matrix(std::initializer_list<std::initializer_list<Complex>> rows);

ComplexMatrix identity(Index n);
ComplexMatrix zeros(Index rows, Index cols);

bool all_finite(const ComplexMatrix& a);
void require_finite(const ComplexMatrix& a, const char* what);

/// Full SVD with rank decided by the relative cutoff rank_rel_tol * sigma_1.
SvdFactorization svd(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// As above, with cutoff rank_rel_tol * max(sigma_1, reference). Used for
/// computed products whose rounding error scales with `reference` rather than
/// with their own largest singular value (A^k: reference = ||A||_2^k).
SvdFactorization svd(const ComplexMatrix& a, const ToleranceContext& tol, double reference);

/// V [Sigma_r^{-1} 0; 0 0] U^* using the first `rank` singular triplets
/// (defaults to the factorization's own rank).
ComplexMatrix pseudo_inverse_from(const SvdFactorization& f);
ComplexMatrix pseudo_inverse_from(const SvdFactorization& f, Index rank);

Index numerical_rank(const ComplexMatrix& a, const ToleranceContext& tol = {});

/// A^k by repeated multiplication; A^0 = I.
ComplexMatrix matrix_power(const ComplexMatrix& a, int k);

double spectral_norm(const ComplexMatrix& a);

/// SVD and rank of A^k with the cutoff referenced to ||A||_2^k, so that a
/// power which vanishes in exact arithmetic is not ranked from rounding noise.
SvdFactorization power_svd(const ComplexMatrix& a, int k, const ToleranceContext& tol = {});
Index power_rank(const ComplexMatrix& a, int k, const ToleranceContext& tol = {});

/// Smallest k >= 0 with rank(A^k) == rank(A^{k+1}), ranks taken as in power_rank.
int matrix_index(const ComplexMatrix& a, const ToleranceContext& tol = {});

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& x, const ComplexMatrix& y);

void require_square(const ComplexMatrix& a, const char* what);
void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const char* what);

} // namespace efinv
