#include "efinv/ef_inverse.hpp"

#include <algorithm>
#include <string>

#include "efinv/classical.hpp"
#include "efinv/subspace.hpp"

namespace efinv {

namespace {

std::string shape(const ComplexMatrix& a)
{
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_ef_shapes(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f, const char* what)
{
    if (e.rows() != a.cols() || e.cols() != a.cols() || f.rows() != a.rows() || f.cols() != a.rows())
        throw ShapeMismatch(std::string(what) + ": A is " + shape(a) + ", so E must be " +
                            std::to_string(a.cols()) + "x" + std::to_string(a.cols()) + " and F " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.rows()) + "; got E " + shape(e) +
                            ", F " + shape(f));
}

ResidualCheck make_check(std::string label, double residual, double threshold)
{
    return {std::move(label), residual, threshold, residual < threshold};
}

// lhs = rhs, thresholded against the norm of the left-hand side.
ResidualCheck equality_check(std::string label, const ComplexMatrix& lhs, const ComplexMatrix& rhs,
                             double (ToleranceContext::*threshold)(double) const, const ToleranceContext& tol)
{
    const double residual = (lhs - rhs).norm();
    return make_check(std::move(label), residual, (tol.*threshold)(lhs.norm()));
}

ResidualCheck inclusion_check(std::string label, const Subspace& small, const Subspace& big,
                              const ToleranceContext& tol)
{
    return make_check(std::move(label), inclusion_residual(small, big), tol.residual_tol);
}

ResidualCheck equal_subspace_check(std::string label, const Subspace& x, const Subspace& y,
                                   const ToleranceContext& tol)
{
    // A dimension mismatch is a failure regardless of the projector distance.
    const double residual = x.dim() == y.dim() ? subspace_distance(x, y) : std::max(1.0, subspace_distance(x, y));
    return make_check(std::move(label), residual, tol.residual_tol);
}

ClauseVerdict make_clause(std::string name, std::vector<ResidualCheck> items)
{
    const bool pass = std::all_of(items.begin(), items.end(), [](const ResidualCheck& c) { return c.pass; });
    return {std::move(name), pass, std::move(items)};
}

ComplexMatrix pinv(const ComplexMatrix& a, const ToleranceContext& tol)
{
    return moore_penrose(a, tol);
}

} // namespace

const ResidualCheck& ExistenceReport::check(std::string_view label) const
{
    for (const auto& c : checks)
        if (c.label == label)
            return c;
    throw BadParams("ExistenceReport: no check named " + std::string(label));
}

const ClauseVerdict& ExistenceReport::clause(std::string_view name) const
{
    for (const auto& c : clauses)
        if (c.clause == name)
            return c;
    throw BadParams("ExistenceReport: no clause named " + std::string(name));
}

EfNotExistent::EfNotExistent(const std::string& what, ExistenceReport report)
    : NotExistent(what,
                  [&report] {
                      std::vector<std::string> failed;
                      for (const auto& c : report.checks)
                          if (!c.pass)
                              failed.push_back(c.label);
                      return failed;
                  }()),
      report_(std::move(report))
{
}

RankConditionFailure::RankConditionFailure(Index rank_cab, Index rank_c, Index rank_b)
    : NotExistent("rank condition rank(CAB) = rank(C) = rank(B) fails: " + std::to_string(rank_cab) + ", " +
                      std::to_string(rank_c) + ", " + std::to_string(rank_b),
                  {"rank(CAB) = rank(C) = rank(B)"}),
      rank_cab_(rank_cab), rank_c_(rank_c), rank_b_(rank_b)
{
}

ExistenceReport ef_exists(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                          const ToleranceContext& tol)
{
    require_ef_shapes(a, e, f, "ef_exists");
    require_finite(a, "ef_exists");
    require_finite(e, "ef_exists");
    require_finite(f, "ef_exists");

    const SvdFactorization fa = svd(a, tol);
    const ComplexMatrix a_pinv = pseudo_inverse_from(fa);

    const auto e_idem = equality_check("E_idem", e * e, e, &ToleranceContext::idempotency_threshold, tol);
    const auto f_idem = equality_check("F_idem", f * f, f, &ToleranceContext::idempotency_threshold, tol);
    const auto commute = equality_check("commute", a * e, f * a, &ToleranceContext::residual_threshold, tol);
    const auto left = equality_check("left", e * a_pinv * a, e, &ToleranceContext::residual_threshold, tol);
    const auto right = equality_check("right", a * a_pinv * f, f, &ToleranceContext::residual_threshold, tol);

    ExistenceReport report;
    report.checks = {e_idem, f_idem, commute, left, right};
    report.exists = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.pass; });
    report.witness_path = "b";

    report.clauses.push_back(make_clause("b", report.checks));

    const Subspace range_a = range_of(fa);
    const Subspace null_a = nullspace_of(fa);
    const Subspace range_f = range_of(f, tol);
    const auto f_in_a = inclusion_check("R(F) in R(A)", range_f, range_a, tol);

    report.clauses.push_back(make_clause(
        "c", {e_idem, f_idem, commute, inclusion_check("N(A) in N(E)", null_a, nullspace_of(e, tol), tol), f_in_a}));

    report.clauses.push_back(make_clause(
        "d", {e_idem, f_idem, commute,
              inclusion_check("R(E*) in R(A*)", range_of(e.adjoint(), tol), range_of(a.adjoint(), tol), tol),
              f_in_a}));

    // The outer-inverse formulation presumes E and F are projectors, so it
    // carries the two idempotency checks as well.
    const Subspace range_e = range_of(e, tol);
    const Subspace null_f = nullspace_of(f, tol);
    const bool outer_ok = outer_prescribed_exists(a, range_e, null_f, tol);
    report.clauses.push_back(make_clause(
        "e", {e_idem, f_idem, make_check("A^(2)_{R(E),N(F)} exists", outer_ok ? 0.0 : 1.0, 0.5),
              equal_subspace_check("N(FA) = N(E)", nullspace_of(f * a, tol), nullspace_of(e, tol), tol),
              equal_subspace_check("R(AE) = R(F)", range_of(a * e, tol), range_f, tol)}));

    report.clauses_agree = std::all_of(report.clauses.begin(), report.clauses.end(),
                                       [&](const ClauseVerdict& c) { return c.pass == report.exists; });
    return report;
}

ComplexMatrix ef_inverse(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                         const ToleranceContext& tol)
{
    ExistenceReport report = ef_exists(a, e, f, tol);
    if (!report.exists)
        throw EfNotExistent("ef_inverse: A^(E,F) does not exist", std::move(report));
    return e * pinv(a, tol) * f;
}

Certificate ef_verify(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                      const ComplexMatrix& x, const ToleranceContext& tol)
{
    require_ef_shapes(a, e, f, "ef_verify");
    if (x.rows() != a.cols() || x.cols() != a.rows())
        throw ShapeMismatch("ef_verify: X must be " + std::to_string(a.cols()) + "x" + std::to_string(a.rows()) +
                            ", got " + shape(x));
    Certificate c;
    c.outer_residual = (x * a * x - x).norm();
    c.left_residual = (x * a - e).norm();
    c.right_residual = (a * x - f).norm();
    c.threshold = tol.residual_tol * std::max({1.0, x.norm(), a.norm()});
    c.pass = c.outer_residual < c.threshold && c.left_residual < c.threshold && c.right_residual < c.threshold;
    return c;
}

OuterPair ef_from_outer_pair(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                             const ToleranceContext& tol)
{
    ExistenceReport report = ef_exists(a, e, f, tol);
    if (!report.exists)
        throw EfNotExistent("ef_from_outer_pair: A^(E,F) does not exist", std::move(report));
    const ComplexMatrix a_pinv = pinv(a, tol);
    return {a_pinv * f, e * a_pinv};
}

CanonicalBlocks canonical_blocks(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                                 const ToleranceContext& tol)
{
    require_ef_shapes(a, e, f, "canonical_blocks");
    CanonicalBlocks out;
    out.svd = svd(a, tol);
    const Index r = out.svd.rank;
    const Index m = a.rows();
    const Index n = a.cols();
    if (r == 0)
        throw BadParams("canonical_blocks: A is the zero matrix");

    const ComplexMatrix eb = out.svd.V.adjoint() * e * out.svd.V;
    const ComplexMatrix fb = out.svd.U.adjoint() * f * out.svd.U;
    out.e1 = eb.topLeftCorner(r, r);
    out.e2 = eb.topRightCorner(r, n - r);
    out.e3 = eb.bottomLeftCorner(n - r, r);
    out.e4 = eb.bottomRightCorner(n - r, n - r);
    out.f1 = fb.topLeftCorner(r, r);
    out.f2 = fb.topRightCorner(r, m - r);
    out.f3 = fb.bottomLeftCorner(m - r, r);
    out.f4 = fb.bottomRightCorner(m - r, m - r);

    const auto sigma = out.svd.sigma.head(r).asDiagonal();
    const ComplexMatrix sigma_e1 = sigma * out.e1;
    const ComplexMatrix f1_sigma = out.f1 * sigma;
    const double e_scale = e.norm();
    const double f_scale = f.norm();

    auto zero_check = [&](std::string label, const ComplexMatrix& block, double scale) {
        return make_check(std::move(label), block.norm(), tol.residual_threshold(scale));
    };

    out.conditions = {
        equality_check("E1^2 = E1", out.e1 * out.e1, out.e1, &ToleranceContext::idempotency_threshold, tol),
        equality_check("F1^2 = F1", out.f1 * out.f1, out.f1, &ToleranceContext::idempotency_threshold, tol),
        equality_check("Sigma E1 = F1 Sigma", sigma_e1, f1_sigma, &ToleranceContext::residual_threshold, tol),
        equality_check("E3 E1 = E3", out.e3 * out.e1, out.e3, &ToleranceContext::residual_threshold, tol),
        equality_check("F1 F2 = F2", out.f1 * out.f2, out.f2, &ToleranceContext::residual_threshold, tol),
        zero_check("E2 = 0", out.e2, e_scale),
        zero_check("E4 = 0", out.e4, e_scale),
        zero_check("F3 = 0", out.f3, f_scale),
        zero_check("F4 = 0", out.f4, f_scale),
    };
    for (const auto& c : out.conditions)
        if (!c.pass)
            out.violated.push_back(c.label);
    return out;
}

ComplexMatrix ef_canonical_form(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                                const ToleranceContext& tol)
{
    const CanonicalBlocks blocks = canonical_blocks(a, e, f, tol);
    if (!blocks.violated.empty()) {
        std::string msg = "ef_canonical_form: block conditions violated:";
        for (const auto& v : blocks.violated)
            msg += " [" + v + "]";
        throw NotExistent(msg, blocks.violated);
    }
    const Index r = blocks.svd.rank;
    const Index m = a.rows();
    const Index n = a.cols();
    const auto sigma_inv = blocks.svd.sigma.head(r).cwiseInverse().asDiagonal();
    const ComplexMatrix top = blocks.e1 * sigma_inv;
    const ComplexMatrix bottom = blocks.e3 * sigma_inv;

    ComplexMatrix core(n, m);
    core.topLeftCorner(r, r) = top;
    core.topRightCorner(r, m - r) = top * blocks.f2;
    core.bottomLeftCorner(n - r, r) = bottom;
    core.bottomRightCorner(n - r, m - r) = bottom * blocks.f2;
    return blocks.svd.V * core * blocks.svd.U.adjoint();
}

namespace {

struct RankTriple {
    Index cab;
    Index c;
    Index b;
    ComplexMatrix cab_matrix;
};

RankTriple bc_ranks(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const char* what,
                    const ToleranceContext& tol)
{
    require_square(a, what);
    require_same_shape(a, b, what);
    require_same_shape(a, c, what);
    ComplexMatrix cab = c * a * b;
    const Index r_cab = numerical_rank(cab, tol);
    const Index r_c = numerical_rank(c, tol);
    const Index r_b = numerical_rank(b, tol);
    if (r_cab != r_c || r_c != r_b)
        throw RankConditionFailure(r_cab, r_c, r_b);
    return {r_cab, r_c, r_b, std::move(cab)};
}

} // namespace

ComplexMatrix crcr_inverse(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                           const ToleranceContext& tol)
{
    const RankTriple ranks = bc_ranks(a, b, c, "crcr_inverse", tol);
    if (ranks.b == 0)
        return zeros(a.rows(), a.cols());
    return b * pseudo_inverse_from(svd(ranks.cab_matrix, tol), ranks.b) * c;
}

BcResiduals bc_residuals(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const ComplexMatrix& x, const ToleranceContext& tol)
{
    require_square(a, "bc_residuals");
    require_same_shape(a, b, "bc_residuals");
    require_same_shape(a, c, "bc_residuals");
    require_same_shape(a, x, "bc_residuals");
    BcResiduals out;
    out.xab = (x * a * b - b).norm();
    out.cax = (c * a * x - c).norm();
    out.range_x = inclusion_residual(range_of(x, tol), range_of(b, tol));
    out.range_x_adj = inclusion_residual(range_of(x.adjoint(), tol), range_of(c.adjoint(), tol));
    return out;
}

ProjectorPair bc_to_ef(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ToleranceContext& tol)
{
    bc_ranks(a, b, c, "bc_to_ef", tol);
    ProjectorPair out;
    out.e = oblique_projector(range_of(b, tol), nullspace_of(c * a, tol), tol);
    out.f = oblique_projector(range_of(a * b, tol), nullspace_of(c, tol), tol);
    return out;
}

ComplexMatrix mary_inverse(const ComplexMatrix& a, const ComplexMatrix& d, const ToleranceContext& tol)
{
    return crcr_inverse(a, d, d, tol);
}

InnerCriterion ef_is_inner(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                           const ToleranceContext& tol)
{
    const ComplexMatrix x = ef_inverse(a, e, f, tol);
    const double scale = a.norm();
    const SvdFactorization fa = svd(a, tol);

    InnerCriterion out;
    out.clauses = {
        make_check("(a) AXA = A", (a * x * a - a).norm(), tol.residual_threshold(scale)),
        make_check("(b) A = AE", (a - a * e).norm(), tol.residual_threshold(scale)),
        make_check("(c) A = FA", (a - f * a).norm(), tol.residual_threshold(scale)),
        inclusion_check("(d) R(A) in R(F)", range_of(fa), range_of(f, tol), tol),
        inclusion_check("(e) N(E) in N(A)", nullspace_of(e, tol), nullspace_of(fa), tol),
    };
    out.inner = out.clauses.front().pass;
    out.clauses_agree = std::all_of(out.clauses.begin(), out.clauses.end(),
                                    [&](const ResidualCheck& c) { return c.pass == out.inner; });
    return out;
}

BilateralResult bilateral_inverse(const ComplexMatrix& a, const ComplexMatrix& x1, const ComplexMatrix& x2,
                                  BilateralOrder order, const ToleranceContext& tol)
{
    if (x1.rows() != a.cols() || x1.cols() != a.rows() || x2.rows() != a.cols() || x2.cols() != a.rows())
        throw ShapeMismatch("bilateral_inverse: X1 and X2 must be " + std::to_string(a.cols()) + "x" +
                            std::to_string(a.rows()) + "; got " + shape(x1) + " and " + shape(x2));

    const ComplexMatrix x1ax1 = x1 * a * x1;
    const double outer_res = (x1ax1 - x1).norm();
    if (!(outer_res < tol.residual_threshold(std::max(x1.norm(), x1ax1.norm()))))
        throw NotOuter("bilateral_inverse: X1 is not an outer inverse (residual " + std::to_string(outer_res) + ")");
    const double inner_res = (a * x2 * a - a).norm();
    if (!(inner_res < tol.residual_threshold(a.norm())))
        throw NotInner("bilateral_inverse: X2 is not an inner inverse (residual " + std::to_string(inner_res) + ")");

    BilateralResult out;
    if (order == BilateralOrder::OuterFirst) {
        out.x = x1 * a * x2;
        out.e = x1 * a;
        out.f = a * x1 * a * x2;
    } else {
        out.x = x2 * a * x1;
        out.e = x2 * a * x1 * a;
        out.f = a * x1;
    }
    out.certificate = ef_verify(a, out.e, out.f, out.x, tol);
    return out;
}

BilateralOrder parse_bilateral_order(std::string_view text)
{
    if (text == "outer-first")
        return BilateralOrder::OuterFirst;
    if (text == "inner-first")
        return BilateralOrder::InnerFirst;
    throw BadParams("unknown bilateral order '" + std::string(text) + "' (expected outer-first or inner-first)");
}

std::string_view to_string(BilateralOrder order)
{
    return order == BilateralOrder::OuterFirst ? "outer-first" : "inner-first";
}

} // namespace efinv
