#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "efinv/dense_core.hpp"
#include "efinv/errors.hpp"

namespace efinv {

/// One labelled residual compared against its (scaled) threshold.
struct ResidualCheck {
    std::string label;
    double residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Verdict of one characterization clause of EF-inverse existence.
struct ClauseVerdict {
    std::string clause;  // "b", "c", "d", "e"
    bool pass = false;
    std::vector<ResidualCheck> items;
};

/// Existence of A^(E,F) for A (m x n), E (n x n), F (m x m).
///
/// `checks` holds the five conditions E^2 = E, F^2 = F, AE = FA,
/// E A^dagger A = E and A A^dagger F = F; `exists` is true iff all pass.
/// `clauses` re-evaluates the question through the equivalent range/nullspace
/// formulations, which must agree with the direct test.
struct ExistenceReport {
    bool exists = false;
    std::vector<ResidualCheck> checks;
    std::string witness_path = "b";
    std::vector<ClauseVerdict> clauses;
    bool clauses_agree = true;

    const ResidualCheck& check(std::string_view label) const;
    const ClauseVerdict& clause(std::string_view name) const;
};

/// Residuals of XAX = X, XA = E and AX = F.
struct Certificate {
    double outer_residual = 0.0;
    double left_residual = 0.0;
    double right_residual = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// NotExistent carrying the full existence report.
class EfNotExistent : public NotExistent {
public:
    EfNotExistent(const std::string& what, ExistenceReport report);
    const ExistenceReport& report() const noexcept { return report_; }

private:
    ExistenceReport report_;
};

/// The rank condition rank(CAB) = rank(C) = rank(B) failed.
class RankConditionFailure : public NotExistent {
public:
    RankConditionFailure(Index rank_cab, Index rank_c, Index rank_b);
    Index rank_cab() const noexcept { return rank_cab_; }
    Index rank_c() const noexcept { return rank_c_; }
    Index rank_b() const noexcept { return rank_b_; }

private:
    Index rank_cab_;
    Index rank_c_;
    Index rank_b_;
};

ExistenceReport ef_exists(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                          const ToleranceContext& tol = {});

/// A^(E,F) = E A^dagger F. Throws EfNotExistent when the existence test fails.
ComplexMatrix ef_inverse(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                         const ToleranceContext& tol = {});

Certificate ef_verify(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                      const ComplexMatrix& x, const ToleranceContext& tol = {});

/// Outer inverses X1 = A^dagger F and X2 = E A^dagger with A^(E,F) = E X1 = X2 F.
struct OuterPair {
    ComplexMatrix x1;
    ComplexMatrix x2;
};

OuterPair ef_from_outer_pair(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                             const ToleranceContext& tol = {});

/// E and F expressed in the singular bases of A = U diag(Sigma, 0) V^*:
/// V^* E V = [E1 E2; E3 E4], U^* F U = [F1 F2; F3 F4], with E1, F1 of size r x r.
struct CanonicalBlocks {
    SvdFactorization svd;
    ComplexMatrix e1, e2, e3, e4;
    ComplexMatrix f1, f2, f3, f4;
    std::vector<ResidualCheck> conditions;
    std::vector<std::string> violated;
};

CanonicalBlocks canonical_blocks(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                                 const ToleranceContext& tol = {});

/// V [E1 S^-1, E1 S^-1 F2; E3 S^-1, E3 S^-1 F2] U^*, after validating the nine
/// block conditions. Throws NotExistent listing the violated ones.
ComplexMatrix ef_canonical_form(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                                const ToleranceContext& tol = {});

/// Rao-Mitra constrained inverse A_{B,C} = B (CAB)^dagger C for square A, B, C.
ComplexMatrix crcr_inverse(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                           const ToleranceContext& tol = {});

/// Residuals of XAB = B and CAX = C plus the two range inclusions
/// R(X) in R(B) and R(X^*) in R(C^*).
struct BcResiduals {
    double xab = 0.0;
    double cax = 0.0;
    double range_x = 0.0;
    double range_x_adj = 0.0;
};

BcResiduals bc_residuals(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const ComplexMatrix& x, const ToleranceContext& tol = {});

struct ProjectorPair {
    ComplexMatrix e;
    ComplexMatrix f;
};

/// E = P_{R(B), N(CA)} and F = P_{R(AB), N(C)}, so that A^(E,F) = A_{B,C}.
ProjectorPair bc_to_ef(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                       const ToleranceContext& tol = {});

/// Inverse of A along D, i.e. the (D, D)-inverse.
ComplexMatrix mary_inverse(const ComplexMatrix& a, const ComplexMatrix& d, const ToleranceContext& tol = {});

/// Whether A^(E,F) is an inner inverse, through five equivalent conditions:
/// AXA = A, A = AE, A = FA, R(A) in R(F), N(E) in N(A).
struct InnerCriterion {
    bool inner = false;
    bool clauses_agree = true;
    std::vector<ResidualCheck> clauses;
};

InnerCriterion ef_is_inner(const ComplexMatrix& a, const ComplexMatrix& e, const ComplexMatrix& f,
                           const ToleranceContext& tol = {});

enum class BilateralOrder { OuterFirst, InnerFirst };

struct BilateralResult {
    ComplexMatrix x;
    ComplexMatrix e;
    ComplexMatrix f;
    Certificate certificate;
};

/// Generalized bilateral inverse from X1 in A{2} and X2 in A{1}:
///   outer-first: X = X1 A X2, E = X1 A,        F = A X1 A X2
///   inner-first: X = X2 A X1, E = X2 A X1 A,   F = A X1
/// Throws NotOuter / NotInner when the membership residuals fail.
BilateralResult bilateral_inverse(const ComplexMatrix& a, const ComplexMatrix& x1, const ComplexMatrix& x2,
                                  BilateralOrder order, const ToleranceContext& tol = {});

BilateralOrder parse_bilateral_order(std::string_view text);
std::string_view to_string(BilateralOrder order);

} // namespace efinv
