#pragma once

#include "efinv/dense_core.hpp"

namespace efinv {

/// General solution of a linear matrix equation, with A^(1) fixed to A^dagger.
///
/// For AXB = C:            X = particular + Z - (I - L) Z (I - R)
/// For AX = D and XB = E:  X = particular + L Y R
///
/// where L = left_annihilator = I - A^dagger A and R = right_annihilator = I - B B^dagger.
struct SolutionFamily {
    enum class Form { SingleEquation, CommonSolution };

    Form form = Form::SingleEquation;
    ComplexMatrix particular;
    ComplexMatrix left_annihilator;
    ComplexMatrix right_annihilator;
    bool consistent = false;

    /// Largest consistency residual relative to its own threshold (< 1 iff consistent).
    double consistency_ratio = 0.0;

    /// Family member for the free parameter (Z or Y, same shape as `particular`).
    ComplexMatrix member(const ComplexMatrix& free) const;
};

/// AXB = C is consistent iff A A^dagger C B^dagger B = C.
SolutionFamily solve_axb(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                         const ToleranceContext& tol = {});

/// Common solution of AX = D and XB = E: consistent iff each equation is
/// solvable and AE = DB. X0 = A^dagger D + (I - A^dagger A) E B^dagger solves both.
SolutionFamily common_solution(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& d,
                               const ComplexMatrix& e, const ToleranceContext& tol = {});

} // namespace efinv
