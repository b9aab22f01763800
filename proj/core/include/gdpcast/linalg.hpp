#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace gdpcast::linalg {

/// Solves A X = B by Gaussian elimination with partial pivoting.
/// Throws SingularMatrixError when a pivot falls below `tolerance` times the
/// largest absolute entry of A.
Eigen::MatrixXd solve_pivoted(Eigen::MatrixXd a, Eigen::MatrixXd b, double tolerance = 1e-12);

struct OlsResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd residuals;
    double ssr = 0.0;
    double sigma2 = 0.0;  // ssr / (n - k)
};

/// Ordinary least squares through the normal equations. Columns are
/// equilibrated before elimination; a rank-deficient design or a perfect fit
/// (zero residual variance) throws SingularMatrixError.
OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

}  // namespace gdpcast::linalg
