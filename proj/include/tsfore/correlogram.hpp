#ifndef TSFORE_CORRELOGRAM_HPP
#define TSFORE_CORRELOGRAM_HPP

#include <cstddef>
#include <vector>

#include "tsfore/time_series.hpp"

namespace tsfore {

/// Correlogram coefficients indexed by lag (element 0 is lag 0 == 1),
/// plus the white-noise 95% band half-width 1.96/sqrt(n).
struct CorrelogramResult {
    std::vector<double> coefficients;
    double confidence_band = 0.0;

    std::size_t max_lag() const { return coefficients.size() - 1; }
};

/**
 * Autocorrelation for lags 0..max_lag. Autocovariances use the biased
 * estimator (sums divided by n), which keeps every coefficient inside
 * [-1, 1]. Requires max_lag < n and a non-constant series.
 */
CorrelogramResult acf(const TimeSeries& series, std::size_t max_lag);

/**
 * Partial autocorrelation for lags 0..max_lag via the Durbin-Levinson
 * recursion on the acf output; coefficient 1 equals acf's. Requires
 * max_lag < n / 2. Raises NumericalBreakdown if the recursion's
 * prediction-error variance underflows.
 */
CorrelogramResult pacf(const TimeSeries& series, std::size_t max_lag);

} // namespace tsfore

#endif // TSFORE_CORRELOGRAM_HPP
