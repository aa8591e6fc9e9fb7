#ifndef TSFORE_DECOMPOSE_HPP
#define TSFORE_DECOMPOSE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "tsfore/time_series.hpp"

namespace tsfore {

enum class DecompositionMode { Additive, Multiplicative };

/**
 * Classical decomposition into trend, seasonal and residual parts.
 * Trend is a centered moving average, so it (and the residual) is
 * undefined for half a window at each edge; those slots are nullopt.
 * The seasonal component repeats one period-long pattern over the
 * whole series.
 */
struct DecompositionResult {
    TimeSeries observed;
    std::vector<std::optional<double>> trend;
    std::vector<double> seasonal;
    std::vector<std::optional<double>> residual;
    DecompositionMode mode = DecompositionMode::Additive;
    std::size_t period = 0;
};

/// Requires at least two full periods of data. Multiplicative mode
/// additionally requires strictly positive values.
DecompositionResult decompose(const TimeSeries& series, std::size_t period,
                              DecompositionMode mode = DecompositionMode::Additive);

} // namespace tsfore

#endif // TSFORE_DECOMPOSE_HPP
