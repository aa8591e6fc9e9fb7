#ifndef TSFORE_STATIONARITY_HPP
#define TSFORE_STATIONARITY_HPP

#include <cstddef>
#include <optional>

#include "tsfore/time_series.hpp"

namespace tsfore {

struct StationarityVerdict {
    double test_statistic = 0.0;
    double p_value = 1.0;
    std::size_t lags_used = 0; ///< lagged-difference terms in the regression
    std::size_t nobs = 0;      ///< rows actually regressed: n - 1 - lags
    double critical_1pct = 0.0;
    double critical_5pct = 0.0;
    double critical_10pct = 0.0;
    bool stationary = false; ///< p_value <= 0.05
};

/**
 * Augmented Dickey-Fuller unit-root test with a constant term:
 *
 *   dy_t = c + rho * y_{t-1} + sum_i phi_i * dy_{t-i} + e_t
 *
 * The statistic is rho's t-ratio; small values reject the unit root.
 * When `lags` is not given it defaults to floor((n-1)^(1/3)). Requires
 * at least 20 observations and a non-constant series.
 */
StationarityVerdict adf_test(const TimeSeries& series,
                             std::optional<std::size_t> lags = std::nullopt);

/// MacKinnon's response-surface p-value for the constant-only ADF
/// statistic (MacKinnon 1994, J. Business & Economic Statistics 12(2)).
double mackinnon_p_value(double statistic);

} // namespace tsfore

#endif // TSFORE_STATIONARITY_HPP
