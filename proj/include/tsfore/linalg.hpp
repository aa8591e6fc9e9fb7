#ifndef TSFORE_LINALG_HPP
#define TSFORE_LINALG_HPP

#include <cstddef>
#include <vector>

namespace tsfore::linalg {

struct LeastSquaresResult {
    std::vector<double> coefficients;
    std::vector<double> std_errors; ///< per-coefficient, sigma^2 from rss/(n-k)
    std::vector<double> residuals;
    double rss = 0.0;
};

/**
 * Solve min_b ||X b - y||_2 by Householder QR. X is row-major, n x k with
 * n >= k. Raises RankDeficient (naming the offending column) when a
 * diagonal of R collapses, SingularRegression when n < k.
 */
LeastSquaresResult solve_least_squares(const std::vector<std::vector<double>>& X,
                                       const std::vector<double>& y,
                                       bool with_std_errors = false);

} // namespace tsfore::linalg

#endif // TSFORE_LINALG_HPP
