#include "tsfore/decompose.hpp"

#include <string>

#include "tsfore/errors.hpp"

namespace tsfore {

namespace {

/// Centered moving average of length `period`. For even periods this is
/// the 2 x m average: a window of m + 1 points whose two end points get
/// half weight, which keeps the window centered on an observation.
std::vector<std::optional<double>> centered_ma(const std::vector<double>& v, std::size_t m) {
    const std::size_t n = v.size();
    std::vector<std::optional<double>> trend(n);
    if (m % 2 == 1) {
        const std::size_t h = (m - 1) / 2;
        for (std::size_t t = h; t + h < n; ++t) {
            double s = 0.0;
            for (std::size_t j = t - h; j <= t + h; ++j) s += v[j];
            trend[t] = s / static_cast<double>(m);
        }
    } else {
        const std::size_t h = m / 2;
        for (std::size_t t = h; t + h < n; ++t) {
            double s = 0.5 * (v[t - h] + v[t + h]);
            for (std::size_t j = t - h + 1; j < t + h; ++j) s += v[j];
            trend[t] = s / static_cast<double>(m);
        }
    }
    return trend;
}

} // namespace

DecompositionResult decompose(const TimeSeries& series, std::size_t period,
                              DecompositionMode mode) {
    if (period < 2) raise(ErrorCode::ParamOutOfRange, "period must be at least 2");
    const std::size_t n = series.size();
    if (n < 2 * period) {
        raise(ErrorCode::SeriesTooShort, "need at least " + std::to_string(2 * period) +
                                             " points for period " + std::to_string(period) +
                                             ", have " + std::to_string(n));
    }
    const auto& v = series.values();
    const bool mult = (mode == DecompositionMode::Multiplicative);
    if (mult) {
        for (std::size_t i = 0; i < n; ++i) {
            if (v[i] <= 0.0) {
                raise(ErrorCode::NonPositiveForMultiplicative,
                      "value " + std::to_string(v[i]) + " at index " + std::to_string(i));
            }
        }
    }

    DecompositionResult out{series, centered_ma(v, period), {}, {}, mode, period};

    // Average the detrended values by phase, then normalise the pattern
    // (zero mean additively, unit mean multiplicatively).
    std::vector<double> phase_sum(period, 0.0);
    std::vector<std::size_t> phase_count(period, 0);
    for (std::size_t t = 0; t < n; ++t) {
        if (!out.trend[t]) continue;
        const double detrended = mult ? v[t] / *out.trend[t] : v[t] - *out.trend[t];
        phase_sum[t % period] += detrended;
        ++phase_count[t % period];
    }
    std::vector<double> pattern(period);
    double level = 0.0;
    for (std::size_t k = 0; k < period; ++k) {
        pattern[k] = phase_sum[k] / static_cast<double>(phase_count[k]);
        level += pattern[k];
    }
    level /= static_cast<double>(period);
    for (std::size_t k = 0; k < period; ++k) {
        pattern[k] = mult ? pattern[k] / level : pattern[k] - level;
    }

    out.seasonal.resize(n);
    out.residual.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.seasonal[t] = pattern[t % period];
        if (out.trend[t]) {
            out.residual[t] = mult ? v[t] / (*out.trend[t] * out.seasonal[t])
                                   : v[t] - *out.trend[t] - out.seasonal[t];
        }
    }
    return out;
}

} // namespace tsfore
