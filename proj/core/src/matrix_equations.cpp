#include "efinv/matrix_equations.hpp"

#include <algorithm>
#include <string>

namespace efinv {

namespace {

ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceContext& tol)
{
    if (a.rows() == 0 || a.cols() == 0)
        return zeros(a.cols(), a.rows());
    return pseudo_inverse_from(svd(a, tol));
}

std::string shape(const ComplexMatrix& a)
{
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

} // namespace

ComplexMatrix SolutionFamily::member(const ComplexMatrix& free) const
{
    require_same_shape(free, particular, "SolutionFamily::member");
    if (form == Form::CommonSolution)
        return particular + left_annihilator * free * right_annihilator;
    const Index n = left_annihilator.rows();
    const Index p = right_annihilator.rows();
    return particular + free - (identity(n) - left_annihilator) * free * (identity(p) - right_annihilator);
}

SolutionFamily solve_axb(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const ToleranceContext& tol)
{
    if (a.rows() != c.rows() || b.cols() != c.cols())
        throw ShapeMismatch("solve_axb: A is " + shape(a) + ", B is " + shape(b) + ", C is " + shape(c));

    const ComplexMatrix a_pinv = pinv(a, tol);
    const ComplexMatrix b_pinv = pinv(b, tol);

    SolutionFamily out;
    out.form = SolutionFamily::Form::SingleEquation;
    out.particular = a_pinv * c * b_pinv;
    out.left_annihilator = identity(a.cols()) - a_pinv * a;
    out.right_annihilator = identity(b.rows()) - b * b_pinv;

    const double residual = (a * out.particular * b - c).norm();
    out.consistency_ratio = residual_ratio(residual, tol.residual_threshold(c.norm()));
    out.consistent = out.consistency_ratio < 1.0;
    return out;
}

SolutionFamily common_solution(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& d,
                               const ComplexMatrix& e, const ToleranceContext& tol)
{
    // A: m x n, X: n x p, D: m x p, B: p x q, E: n x q
    if (a.rows() != d.rows() || b.rows() != d.cols() || e.rows() != a.cols() || e.cols() != b.cols())
        throw ShapeMismatch("common_solution: A is " + shape(a) + ", B is " + shape(b) + ", D is " + shape(d) +
                            ", E is " + shape(e));

    const ComplexMatrix a_pinv = pinv(a, tol);
    const ComplexMatrix b_pinv = pinv(b, tol);

    SolutionFamily out;
    out.form = SolutionFamily::Form::CommonSolution;
    out.left_annihilator = identity(a.cols()) - a_pinv * a;
    out.right_annihilator = identity(b.rows()) - b * b_pinv;
    out.particular = a_pinv * d + out.left_annihilator * e * b_pinv;

    const ComplexMatrix ae = a * e;
    const double left_ratio = residual_ratio((a * a_pinv * d - d).norm(), tol.residual_threshold(d.norm()));
    const double right_ratio = residual_ratio((e * b_pinv * b - e).norm(), tol.residual_threshold(e.norm()));
    const double compat_ratio = residual_ratio((ae - d * b).norm(), tol.residual_threshold(ae.norm()));
    out.consistency_ratio = std::max({left_ratio, right_ratio, compat_ratio});
    out.consistent = out.consistency_ratio < 1.0;
    return out;
}

} // namespace efinv
