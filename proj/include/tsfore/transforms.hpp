#ifndef TSFORE_TRANSFORMS_HPP
#define TSFORE_TRANSFORMS_HPP

#include <utility>

#include "tsfore/time_series.hpp"

namespace tsfore {

/// Min-max scaling state, always fitted on the training split only.
struct ScalerParams {
    double observed_min = 0.0;
    double observed_max = 1.0;
};

/// Fit on `train` and return its [0,1]-scaled copy. Fitting a constant
/// series raises ConstantSeries (the inverse would be undefined).
std::pair<ScalerParams, TimeSeries> minmax_fit_transform(const TimeSeries& train);

/// x -> (x - min) / (max - min). Values outside the fitted range map
/// outside [0,1]; that is expected for unseen data.
TimeSeries minmax_apply(const ScalerParams& params, const TimeSeries& series);

/// Inverse map, x -> x * (max - min) + min.
TimeSeries minmax_invert(const ScalerParams& params, const TimeSeries& series);

/// Trailing-window rolling mean and sample (n-1) standard deviation.
/// Output length is size - window + 1; element i covers values[i .. i+window).
std::pair<TimeSeries, TimeSeries> rolling_stats(const TimeSeries& series, std::size_t window);

/// Element-wise natural log; any value <= 0 raises NonPositiveValue.
TimeSeries log_transform(const TimeSeries& series);

/// Chronological split: train takes the first ceil(n * (1 - test_ratio))
/// points, test the remainder. Never shuffles.
std::pair<TimeSeries, TimeSeries> chronological_split(const TimeSeries& series, double test_ratio);

/// Row count of the train side of a chronological split over n items.
std::size_t train_size_for_split(std::size_t n, double test_ratio);

} // namespace tsfore

#endif // TSFORE_TRANSFORMS_HPP
