#ifndef TSFORE_METRICS_HPP
#define TSFORE_METRICS_HPP

#include <cstddef>
#include <vector>

namespace tsfore {

struct MetricSet {
    double mae = 0.0;
    double mse = 0.0;
    double r2 = 0.0;
    std::size_t n = 0;
};

double mae(const std::vector<double>& actual, const std::vector<double>& predicted);
double mse(const std::vector<double>& actual, const std::vector<double>& predicted);

/// 1 - SS_res / SS_tot. Raises ConstantActual when the actuals have zero
/// variance (the score is undefined there, never silently 0).
double r2_score(const std::vector<double>& actual, const std::vector<double>& predicted);

/// Bundles mae, mse and r2 over one split. A zero-MSE fit scores r2 = 1
/// even on constant actuals (where bare r2_score would refuse), so the
/// set always satisfies r2 == 1 iff mse == 0.
MetricSet evaluate_point_forecasts(const std::vector<double>& actual,
                                   const std::vector<double>& predicted);

} // namespace tsfore

#endif // TSFORE_METRICS_HPP
