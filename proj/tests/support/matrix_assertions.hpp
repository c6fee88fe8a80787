#pragma once

#include <gtest/gtest.h>

#include "efinv/dense_core.hpp"

namespace efinv::testing {

inline ::testing::AssertionResult matrices_near(const char* a_expr, const char* b_expr, const char*,
                                                const ComplexMatrix& a, const ComplexMatrix& b, double tol)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return ::testing::AssertionFailure() << a_expr << " is " << a.rows() << "x" << a.cols() << " but " << b_expr
                                             << " is " << b.rows() << "x" << b.cols();
    const double dist = (a - b).norm();
    if (dist <= tol)
        return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "||" << a_expr << " - " << b_expr << "||_F = " << dist << " > " << tol
                                         << "\n" << a_expr << " =\n" << a << "\n" << b_expr << " =\n" << b;
}

} // namespace efinv::testing

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_PRED_FORMAT3(::efinv::testing::matrices_near, a, b, tol)
#define ASSERT_MAT_NEAR(a, b, tol) ASSERT_PRED_FORMAT3(::efinv::testing::matrices_near, a, b, tol)
