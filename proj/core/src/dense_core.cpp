#include "efinv/dense_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace efinv {

void ToleranceContext::validate() const
{
    auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (rank_rel_tol && !ok(*rank_rel_tol))
        throw BadParams("rank_rel_tol must be a finite nonnegative number");
    if (!ok(residual_tol))
        throw BadParams("residual_tol must be a finite nonnegative number");
    if (!ok(idempotency_tol))
        throw BadParams("idempotency_tol must be a finite nonnegative number");
}

double ToleranceContext::rank_rel_tol_for(Index rows, Index cols) const
{
    if (rank_rel_tol)
        return *rank_rel_tol;
    return static_cast<double>(std::max<Index>({rows, cols, 1})) * std::numeric_limits<double>::epsilon();
}

double ToleranceContext::residual_threshold(double scale) const
{
    return residual_tol * std::max(1.0, scale);
}

double ToleranceContext::idempotency_threshold(double scale) const
{
    return idempotency_tol * std::max(1.0, scale);
}

double residual_ratio(double residual, double threshold)
{
    if (threshold > 0.0)
        return residual / threshold;
    return residual == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

ComplexMatrix make_matrix(std::initializer_list<std::initializer_list<Complex>> rows)
{
    const auto m = static_cast<Index>(rows.size());
    const auto n = m == 0 ? Index{0} : static_cast<Index>(rows.begin()->size());
    ComplexMatrix out(m, n);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != n)
            throw ShapeMismatch("make_matrix: ragged rows");
        Index j = 0;
        for (const auto& v : row)
            out(i, j++) = v;
        ++i;
    }
    require_finite(out, "make_matrix");
    return out;
}

ComplexMatrix identity(Index n)
{
    return ComplexMatrix::Identity(n, n);
}

ComplexMatrix zeros(Index rows, Index cols)
{
    return ComplexMatrix::Zero(rows, cols);
}

bool all_finite(const ComplexMatrix& a)
{
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
                return false;
    return true;
}

void require_finite(const ComplexMatrix& a, const char* what)
{
    if (!all_finite(a))
        throw NonFiniteEntry(std::string(what) + ": matrix has NaN or Inf entries");
}

void require_square(const ComplexMatrix& a, const char* what)
{
    if (a.rows() != a.cols())
        throw NotSquare(std::string(what) + ": expected a square matrix, got " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()));
}

void require_same_shape(const ComplexMatrix& x, const ComplexMatrix& y, const char* what)
{
    if (x.rows() != y.rows() || x.cols() != y.cols())
        throw ShapeMismatch(std::string(what) + ": shapes " + std::to_string(x.rows()) + "x" +
                            std::to_string(x.cols()) + " and " + std::to_string(y.rows()) + "x" +
                            std::to_string(y.cols()) + " differ");
}

SvdFactorization svd(const ComplexMatrix& a, const ToleranceContext& tol)
{
    return svd(a, tol, 0.0);
}

SvdFactorization svd(const ComplexMatrix& a, const ToleranceContext& tol, double reference)
{
    if (a.rows() == 0 || a.cols() == 0)
        throw ShapeMismatch("svd: empty matrix");
    require_finite(a, "svd");

    Eigen::BDCSVD<ComplexMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (dec.info() != Eigen::Success)
        throw FactorizationFailure("svd: SVD did not converge");

    SvdFactorization out;
    out.U = dec.matrixU();
    out.V = dec.matrixV();
    out.sigma = dec.singularValues();
    if (!all_finite(out.U) || !all_finite(out.V) || !out.sigma.allFinite())
        throw FactorizationFailure("svd: non-finite factors");

    const double sigma1 = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
    out.cutoff = tol.rank_rel_tol_for(a.rows(), a.cols()) * std::max(sigma1, reference);
    out.rank = 0;
    for (Index i = 0; i < out.sigma.size(); ++i)
        if (out.sigma(i) > out.cutoff)
            ++out.rank;
    return out;
}

ComplexMatrix pseudo_inverse_from(const SvdFactorization& f, Index rank)
{
    if (rank < 0 || rank > f.sigma.size())
        throw BadParams("pseudo_inverse_from: rank out of range");
    if (rank > 0 && !(f.sigma(rank - 1) > 0.0))
        throw BadParams("pseudo_inverse_from: zero singular value inside the requested rank");
    if (rank == 0)
        return zeros(f.cols(), f.rows());
    return f.V.leftCols(rank) * f.sigma.head(rank).cwiseInverse().asDiagonal() * f.U.leftCols(rank).adjoint();
}

ComplexMatrix pseudo_inverse_from(const SvdFactorization& f)
{
    return pseudo_inverse_from(f, f.rank);
}

Index numerical_rank(const ComplexMatrix& a, const ToleranceContext& tol)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    return svd(a, tol).rank;
}

ComplexMatrix matrix_power(const ComplexMatrix& a, int k)
{
    require_square(a, "matrix_power");
    if (k < 0)
        throw BadParams("matrix_power: negative exponent");
    ComplexMatrix out = identity(a.rows());
    for (int i = 0; i < k; ++i)
        out = out * a;
    return out;
}

double spectral_norm(const ComplexMatrix& a)
{
    if (a.rows() == 0 || a.cols() == 0)
        return 0.0;
    require_finite(a, "spectral_norm");
    return Eigen::BDCSVD<ComplexMatrix>(a).singularValues()(0);
}

SvdFactorization power_svd(const ComplexMatrix& a, int k, const ToleranceContext& tol)
{
    return svd(matrix_power(a, k), tol, std::pow(spectral_norm(a), k));
}

Index power_rank(const ComplexMatrix& a, int k, const ToleranceContext& tol)
{
    return power_svd(a, k, tol).rank;
}

int matrix_index(const ComplexMatrix& a, const ToleranceContext& tol)
{
    require_square(a, "matrix_index");
    const Index n = a.rows();
    if (n == 0)
        return 0;
    const double norm = spectral_norm(a);
    Index prev_rank = n;
    ComplexMatrix power = a;
    double reference = norm;
    for (int k = 0; k <= n; ++k) {
        const Index r = svd(power, tol, reference).rank;
        if (r == prev_rank)
            return k;
        prev_rank = r;
        power = power * a;
        reference *= norm;
    }
    // Ranks decrease strictly until they stall, so the loop always returns.
    return static_cast<int>(n);
}

double frobenius_norm(const ComplexMatrix& a)
{
    return a.norm();
}

double frobenius_distance(const ComplexMatrix& x, const ComplexMatrix& y)
{
    require_same_shape(x, y, "frobenius_distance");
    return (x - y).norm();
}

} // namespace efinv
