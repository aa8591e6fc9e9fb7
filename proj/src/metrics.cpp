#include "tsfore/metrics.hpp"

#include <cmath>
#include <string>

#include "tsfore/errors.hpp"

namespace tsfore {

namespace {

void check_pair(const std::vector<double>& actual, const std::vector<double>& predicted) {
    if (actual.empty()) raise(ErrorCode::EmptyInput, "no observations to score");
    if (actual.size() != predicted.size()) {
        raise(ErrorCode::LengthMismatch, std::to_string(actual.size()) + " actuals vs " +
                                             std::to_string(predicted.size()) + " predictions");
    }
}

} // namespace

double mae(const std::vector<double>& actual, const std::vector<double>& predicted) {
    check_pair(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) s += std::abs(actual[i] - predicted[i]);
    return s / static_cast<double>(actual.size());
}

double mse(const std::vector<double>& actual, const std::vector<double>& predicted) {
    check_pair(actual, predicted);
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double d = actual[i] - predicted[i];
        s += d * d;
    }
    return s / static_cast<double>(actual.size());
}

double r2_score(const std::vector<double>& actual, const std::vector<double>& predicted) {
    check_pair(actual, predicted);
    double mean = 0.0;
    for (double a : actual) mean += a;
    mean /= static_cast<double>(actual.size());
    double ss_tot = 0.0;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double dt = actual[i] - mean;
        const double dr = actual[i] - predicted[i];
        ss_tot += dt * dt;
        ss_res += dr * dr;
    }
    if (ss_tot == 0.0) {
        raise(ErrorCode::ConstantActual, "actual values are constant, R^2 is undefined");
    }
    return 1.0 - ss_res / ss_tot;
}

MetricSet evaluate_point_forecasts(const std::vector<double>& actual,
                                   const std::vector<double>& predicted) {
    MetricSet m;
    m.mae = mae(actual, predicted);
    m.mse = mse(actual, predicted);
    // An exactly perfect fit scores 1 even on constant actuals, keeping the
    // "r2 == 1 iff mse == 0" invariant where r2_score alone is undefined.
    m.r2 = m.mse == 0.0 ? 1.0 : r2_score(actual, predicted);
    m.n = actual.size();
    return m;
}

} // namespace tsfore
