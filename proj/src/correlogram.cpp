#include "tsfore/correlogram.hpp"

#include <cmath>
#include <string>

#include "tsfore/errors.hpp"

namespace tsfore {

CorrelogramResult acf(const TimeSeries& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (max_lag >= n) {
        raise(ErrorCode::LagTooLarge, "max lag " + std::to_string(max_lag) +
                                          " with only " + std::to_string(n) + " observations");
    }
    const auto& v = series.values();
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(n);

    double c0 = 0.0;
    for (double x : v) c0 += (x - mean) * (x - mean);
    c0 /= static_cast<double>(n);
    if (c0 == 0.0) raise(ErrorCode::ConstantSeries, "autocorrelation of a constant series");

    CorrelogramResult out;
    out.coefficients.resize(max_lag + 1);
    out.coefficients[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = k; t < n; ++t) ck += (v[t] - mean) * (v[t - k] - mean);
        ck /= static_cast<double>(n);
        out.coefficients[k] = ck / c0;
    }
    out.confidence_band = 1.96 / std::sqrt(static_cast<double>(n));
    return out;
}

CorrelogramResult pacf(const TimeSeries& series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (2 * max_lag >= n) {
        raise(ErrorCode::LagTooLarge, "max lag " + std::to_string(max_lag) +
                                          " must stay below half the length " + std::to_string(n));
    }
    auto correl = acf(series, max_lag);
    const auto& rho = correl.coefficients;

    CorrelogramResult out;
    out.confidence_band = correl.confidence_band;
    out.coefficients.assign(max_lag + 1, 1.0);
    if (max_lag == 0) return out;

    // Durbin-Levinson: phi holds the current-order coefficients, v the
    // normalised prediction-error variance.
    std::vector<double> phi(max_lag + 1, 0.0);
    std::vector<double> prev(max_lag + 1, 0.0);
    phi[1] = rho[1];
    out.coefficients[1] = rho[1];
    double v = 1.0 - rho[1] * rho[1];
    for (std::size_t k = 2; k <= max_lag; ++k) {
        if (v < 1e-12) {
            raise(ErrorCode::NumericalBreakdown,
                  "prediction-error variance vanished at lag " + std::to_string(k));
        }
        prev = phi;
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= prev[j] * rho[k - j];
        const double phikk = num / v;
        phi[k] = phikk;
        for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - phikk * prev[k - j];
        out.coefficients[k] = phikk;
        v *= (1.0 - phikk * phikk);
    }
    return out;
}

} // namespace tsfore
