#include "tsfore/stationarity.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tsfore/errors.hpp"
#include "tsfore/linalg.hpp"

namespace tsfore {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Finite-sample critical values for the constant-only case, MacKinnon
/// (2010), Queen's Economics Dept. WP 1227, Table 2 (one variable):
/// cv = b0 + b1/T + b2/T^2 + b3/T^3.
double critical_value(const double (&b)[4], std::size_t nobs) {
    const double t = static_cast<double>(nobs);
    return b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t);
}

constexpr double kCrit1[4] = {-3.43035, -6.5393, -16.786, -79.433};
constexpr double kCrit5[4] = {-2.86154, -2.8903, -4.234, -40.040};
constexpr double kCrit10[4] = {-2.56677, -1.5384, -2.809, 0.0};

} // namespace

double mackinnon_p_value(double statistic) {
    // Response-surface fit for the constant-only regression. Outside the
    // tabulated range the p-value saturates at 0 or 1.
    if (statistic > 2.74) return 1.0;
    if (statistic < -18.83) return 0.0;
    const double t = statistic;
    double z;
    if (t <= -1.61) {
        z = 2.1659 + 1.4412 * t + 0.038269 * t * t;
    } else {
        z = 1.7339 + 0.93202 * t - 0.12745 * t * t - 0.010368 * t * t * t;
    }
    return normal_cdf(z);
}

StationarityVerdict adf_test(const TimeSeries& series, std::optional<std::size_t> lags) {
    const std::size_t n = series.size();
    if (n < 20) {
        raise(ErrorCode::SeriesTooShort,
              "unit-root test needs at least 20 observations, have " + std::to_string(n));
    }
    const auto& y = series.values();
    bool constant = true;
    for (std::size_t i = 1; i < n && constant; ++i) constant = (y[i] == y[0]);
    if (constant) raise(ErrorCode::ConstantSeries, "unit-root test of a constant series");

    const std::size_t p =
        lags ? *lags
             : static_cast<std::size_t>(std::floor(std::cbrt(static_cast<double>(n - 1)) + 1e-9));
    // Need strictly positive residual degrees of freedom: rows n-1-p,
    // columns p+2.
    if (n < 2 * p + 4) {
        raise(ErrorCode::LagTooLarge, std::to_string(p) + " lagged differences leave too few rows (" +
                                          std::to_string(n) + " observations)");
    }

    std::vector<double> dy(n - 1);
    for (std::size_t t = 1; t < n; ++t) dy[t - 1] = y[t] - y[t - 1];

    const std::size_t rows = n - 1 - p;
    std::vector<std::vector<double>> X;
    std::vector<double> target;
    X.reserve(rows);
    target.reserve(rows);
    for (std::size_t t = p + 1; t < n; ++t) {
        std::vector<double> row;
        row.reserve(p + 2);
        row.push_back(1.0);
        row.push_back(y[t - 1]);
        for (std::size_t i = 1; i <= p; ++i) row.push_back(dy[t - 1 - i]);
        X.push_back(std::move(row));
        target.push_back(dy[t - 1]);
    }

    auto fit = linalg::solve_least_squares(X, target, true);

    StationarityVerdict v;
    v.lags_used = p;
    v.nobs = rows;
    v.test_statistic = fit.coefficients[1] / fit.std_errors[1];
    v.p_value = mackinnon_p_value(v.test_statistic);
    v.critical_1pct = critical_value(kCrit1, rows);
    v.critical_5pct = critical_value(kCrit5, rows);
    v.critical_10pct = critical_value(kCrit10, rows);
    v.stationary = (v.p_value <= 0.05);
    return v;
}

} // namespace tsfore
