#include "gdpcast/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "gdpcast/error.hpp"

namespace gdpcast::linalg {

Eigen::MatrixXd solve_pivoted(Eigen::MatrixXd a, Eigen::MatrixXd b, double tolerance) {
    const Eigen::Index n = a.rows();
    if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve_pivoted: shape mismatch");
    const double scale = a.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) throw SingularMatrixError("singular matrix: all entries zero");

    for (Eigen::Index col = 0; col < n; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        }
        if (std::abs(a(pivot, col)) <= tolerance * scale) {
            throw SingularMatrixError("singular matrix at column " + std::to_string(col));
        }
        if (pivot != col) {
            a.row(col).swap(a.row(pivot));
            b.row(col).swap(b.row(pivot));
        }
        for (Eigen::Index r = col + 1; r < n; ++r) {
            const double factor = a(r, col) / a(col, col);
            if (factor == 0.0) continue;
            a.row(r).tail(n - col) -= factor * a.row(col).tail(n - col);
            b.row(r) -= factor * b.row(col);
        }
    }
    for (Eigen::Index r = n - 1; r >= 0; --r) {
        for (Eigen::Index c = r + 1; c < n; ++c) b.row(r) -= a(r, c) * b.row(c);
        b.row(r) /= a(r, r);
    }
    return b;
}

OlsResult ols(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
    const Eigen::Index n = x.rows();
    const Eigen::Index k = x.cols();
    if (y.size() != n) throw std::invalid_argument("ols: row count mismatch");
    if (n <= k) throw std::invalid_argument("ols: need more rows than regressors");

    Eigen::MatrixXd xtx = x.transpose() * x;
    Eigen::VectorXd xty = x.transpose() * y;

    // Equilibrate to unit diagonal so the pivot tolerance is scale free.
    Eigen::VectorXd d(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        if (!(xtx(j, j) > 0.0)) throw SingularMatrixError("regressor " + std::to_string(j) + " is zero");
        d(j) = 1.0 / std::sqrt(xtx(j, j));
    }
    const Eigen::MatrixXd scaled = d.asDiagonal() * xtx * d.asDiagonal();

    Eigen::MatrixXd rhs(k, k + 1);
    rhs.leftCols(k) = Eigen::MatrixXd::Identity(k, k);
    rhs.col(k) = d.asDiagonal() * xty;
    const Eigen::MatrixXd sol = solve_pivoted(scaled, rhs, 1e-10);

    OlsResult out;
    out.coefficients = d.asDiagonal() * sol.col(k);
    out.residuals = y - x * out.coefficients;
    out.ssr = out.residuals.squaredNorm();
    out.sigma2 = out.ssr / static_cast<double>(n - k);
    if (!(out.sigma2 > 0.0)) throw SingularMatrixError("degenerate regression: zero residual variance");
    // (X'X)^-1 = D S^-1 D
    out.std_errors.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        out.std_errors(j) = std::sqrt(out.sigma2 * sol(j, j) * d(j) * d(j));
    }
    return out;
}

}  // namespace gdpcast::linalg
