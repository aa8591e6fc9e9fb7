#include "tsfore/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "tsfore/errors.hpp"

namespace tsfore::linalg {

LeastSquaresResult solve_least_squares(const std::vector<std::vector<double>>& X,
                                       const std::vector<double>& y,
                                       bool with_std_errors) {
    const std::size_t n = X.size();
    if (n == 0) raise(ErrorCode::EmptyInput, "least squares needs at least one row");
    const std::size_t k = X[0].size();
    if (k == 0) raise(ErrorCode::EmptyInput, "least squares needs at least one column");
    if (y.size() != n) {
        raise(ErrorCode::LengthMismatch, "design has " + std::to_string(n) +
                                             " rows, response has " + std::to_string(y.size()));
    }
    if (n < k) {
        raise(ErrorCode::SingularRegression, "more columns (" + std::to_string(k) +
                                                 ") than rows (" + std::to_string(n) + ")");
    }

    // Working copies; A is overwritten with R (upper part) and the
    // Householder vectors, b with Q'y.
    std::vector<std::vector<double>> A(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (X[i].size() != k) {
            raise(ErrorCode::WidthMismatch, "row " + std::to_string(i) + " has " +
                                                std::to_string(X[i].size()) + " columns, expected " +
                                                std::to_string(k));
        }
        A[i] = X[i];
    }
    std::vector<double> b = y;

    double max_col_norm = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += A[i][j] * A[i][j];
        max_col_norm = std::max(max_col_norm, std::sqrt(s));
    }
    const double rank_tol =
        std::numeric_limits<double>::epsilon() * static_cast<double>(n) * max_col_norm;

    std::vector<double> v(n);
    for (std::size_t j = 0; j < k; ++j) {
        double norm = 0.0;
        for (std::size_t i = j; i < n; ++i) norm += A[i][j] * A[i][j];
        norm = std::sqrt(norm);
        if (norm <= rank_tol) {
            raise(ErrorCode::RankDeficient,
                  "column " + std::to_string(j) + " is linearly dependent");
        }
        const double alpha = (A[j][j] >= 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        v[j] = A[j][j] - alpha;
        vnorm2 += v[j] * v[j];
        for (std::size_t i = j + 1; i < n; ++i) {
            v[i] = A[i][j];
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 > 0.0) {
            for (std::size_t c = j; c < k; ++c) {
                double dot = 0.0;
                for (std::size_t i = j; i < n; ++i) dot += v[i] * A[i][c];
                const double f = 2.0 * dot / vnorm2;
                for (std::size_t i = j; i < n; ++i) A[i][c] -= f * v[i];
            }
            double dot = 0.0;
            for (std::size_t i = j; i < n; ++i) dot += v[i] * b[i];
            const double f = 2.0 * dot / vnorm2;
            for (std::size_t i = j; i < n; ++i) b[i] -= f * v[i];
        }
        A[j][j] = alpha;
        if (std::abs(alpha) <= rank_tol) {
            raise(ErrorCode::RankDeficient,
                  "column " + std::to_string(j) + " is linearly dependent");
        }
    }

    LeastSquaresResult out;
    out.coefficients.assign(k, 0.0);
    for (std::size_t j = k; j-- > 0;) {
        double s = b[j];
        for (std::size_t c = j + 1; c < k; ++c) s -= A[j][c] * out.coefficients[c];
        out.coefficients[j] = s / A[j][j];
    }

    out.residuals.assign(n, 0.0);
    out.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t c = 0; c < k; ++c) fit += X[i][c] * out.coefficients[c];
        out.residuals[i] = y[i] - fit;
        out.rss += out.residuals[i] * out.residuals[i];
    }

    if (with_std_errors) {
        if (n == k) {
            raise(ErrorCode::SingularRegression,
                  "no residual degrees of freedom for standard errors");
        }
        // (X'X)^-1 = R^-1 R^-T; diagonal entries are squared row norms of R^-1.
        std::vector<std::vector<double>> rinv(k, std::vector<double>(k, 0.0));
        for (std::size_t c = 0; c < k; ++c) {
            rinv[c][c] = 1.0 / A[c][c];
            for (std::size_t r = c; r-- > 0;) {
                double s = 0.0;
                for (std::size_t m = r + 1; m <= c; ++m) s += A[r][m] * rinv[m][c];
                rinv[r][c] = -s / A[r][r];
            }
        }
        const double sigma2 = out.rss / static_cast<double>(n - k);
        out.std_errors.assign(k, 0.0);
        for (std::size_t r = 0; r < k; ++r) {
            double s = 0.0;
            for (std::size_t c = r; c < k; ++c) s += rinv[r][c] * rinv[r][c];
            out.std_errors[r] = std::sqrt(sigma2 * s);
        }
    }
    return out;
}

} // namespace tsfore::linalg
