#include "tsfore/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "tsfore/errors.hpp"

namespace tsfore {

std::pair<ScalerParams, TimeSeries> minmax_fit_transform(const TimeSeries& train) {
    auto [lo, hi] = std::minmax_element(train.values().begin(), train.values().end());
    if (*lo == *hi) {
        raise(ErrorCode::ConstantSeries, "min-max fit needs max > min, series '" + train.name() + "' is constant");
    }
    ScalerParams params{*lo, *hi};
    return {params, minmax_apply(params, train)};
}

TimeSeries minmax_apply(const ScalerParams& params, const TimeSeries& series) {
    const double span = params.observed_max - params.observed_min;
    if (span <= 0.0) raise(ErrorCode::ConstantSeries, "scaler params have max <= min");
    std::vector<double> scaled;
    scaled.reserve(series.size());
    for (double v : series.values()) scaled.push_back((v - params.observed_min) / span);
    return series.with_values(std::move(scaled), series.name() + ".scaled");
}

TimeSeries minmax_invert(const ScalerParams& params, const TimeSeries& series) {
    const double span = params.observed_max - params.observed_min;
    if (span <= 0.0) raise(ErrorCode::ConstantSeries, "scaler params have max <= min");
    std::vector<double> raw;
    raw.reserve(series.size());
    for (double v : series.values()) raw.push_back(v * span + params.observed_min);
    return series.with_values(std::move(raw), series.name() + ".unscaled");
}

std::pair<TimeSeries, TimeSeries> rolling_stats(const TimeSeries& series, std::size_t window) {
    const std::size_t n = series.size();
    if (window < 2) raise(ErrorCode::ParamOutOfRange, "rolling window must be >= 2");
    if (window > n) {
        raise(ErrorCode::WindowTooLarge,
              "window " + std::to_string(window) + " exceeds series length " + std::to_string(n));
    }
    const std::size_t out_n = n - window + 1;
    std::vector<double> means(out_n), stds(out_n);
    const auto& v = series.values();
    for (std::size_t i = 0; i < out_n; ++i) {
        double sum = 0.0;
        for (std::size_t j = i; j < i + window; ++j) sum += v[j];
        const double mean = sum / static_cast<double>(window);
        double ss = 0.0;
        for (std::size_t j = i; j < i + window; ++j) {
            const double d = v[j] - mean;
            ss += d * d;
        }
        means[i] = mean;
        stds[i] = std::sqrt(ss / static_cast<double>(window - 1));
    }
    // timestamps follow the trailing edge of each window
    Date start = series.date_at(window - 1);
    TimeSeries mean_series(start, series.step_days(), std::move(means), series.name() + ".rolling_mean");
    TimeSeries std_series(start, series.step_days(), std::move(stds), series.name() + ".rolling_std");
    return {std::move(mean_series), std::move(std_series)};
}

TimeSeries log_transform(const TimeSeries& series) {
    std::vector<double> logs;
    logs.reserve(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double v = series[i];
        if (v <= 0.0) {
            raise(ErrorCode::NonPositiveValue,
                  "value " + std::to_string(v) + " at index " + std::to_string(i) + " is not > 0");
        }
        logs.push_back(std::log(v));
    }
    return series.with_values(std::move(logs), series.name() + ".log");
}

std::size_t train_size_for_split(std::size_t n, double test_ratio) {
    if (!(test_ratio > 0.0 && test_ratio < 1.0)) {
        raise(ErrorCode::ParamOutOfRange, "test ratio must lie in (0,1)");
    }
    const double train_exact = static_cast<double>(n) * (1.0 - test_ratio);
    return static_cast<std::size_t>(std::ceil(train_exact));
}

std::pair<TimeSeries, TimeSeries> chronological_split(const TimeSeries& series, double test_ratio) {
    const std::size_t n = series.size();
    if (n < 2) raise(ErrorCode::DegenerateSplit, "cannot split a series of length " + std::to_string(n));
    const std::size_t train_n = train_size_for_split(n, test_ratio);
    if (train_n == 0 || train_n >= n) {
        raise(ErrorCode::DegenerateSplit, "split leaves an empty side (train " + std::to_string(train_n) +
                                              " of " + std::to_string(n) + ")");
    }
    const auto& v = series.values();
    std::vector<double> train_vals(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(train_n));
    std::vector<double> test_vals(v.begin() + static_cast<std::ptrdiff_t>(train_n), v.end());
    TimeSeries train(series.start(), series.step_days(), std::move(train_vals), series.name() + ".train");
    TimeSeries test(series.date_at(train_n), series.step_days(), std::move(test_vals), series.name() + ".test");
    return {std::move(train), std::move(test)};
}

} // namespace tsfore
