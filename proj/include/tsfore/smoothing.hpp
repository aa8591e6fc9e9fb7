#ifndef TSFORE_SMOOTHING_HPP
#define TSFORE_SMOOTHING_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "tsfore/date.hpp"
#include "tsfore/time_series.hpp"

namespace tsfore {

struct HoltWintersParams {
    double alpha = 0.3;
    double beta = 0.1;
    double gamma = 0.1;
    std::size_t period = 7;
};

struct Forecast {
    std::size_t horizon = 0;
    std::vector<double> values;
    Date origin;             ///< last training timestamp
    std::int64_t step_days = 1;

    Date date_at(std::size_t h0) const { // h0 = 0 is the first step ahead
        return origin.plus_days(static_cast<std::int64_t>(h0 + 1) * step_days);
    }
};

struct SesModel {
    double alpha = 0.0;
    double level = 0.0;            ///< final smoothed level
    std::vector<double> fitted;    ///< one-step predictions; [0] is the seed
    double training_sse = 0.0;     ///< over t >= 1
    Date origin;
    std::int64_t step_days = 1;
};

struct HoltModel {
    double alpha = 0.0;
    double beta = 0.0;
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> fitted;
    std::vector<double> level_path; ///< state after each step (seed before it)
    std::vector<double> trend_path;
    std::size_t init_length = 1;
    double training_sse = 0.0; ///< over the non-initialization region
    Date origin;
    std::int64_t step_days = 1;
};

struct HoltWintersModel {
    HoltWintersParams params;
    double level = 0.0;
    double trend = 0.0;
    std::vector<double> seasonals; ///< final cycle, indexed by phase t mod m
    std::vector<double> fitted;    ///< length n; first `period` entries are seeds
    std::vector<double> level_path;
    std::vector<double> trend_path;
    std::vector<double> seasonal_path; ///< seasonal state used/produced at t
    std::size_t init_length = 0;       ///< == period
    double training_sse = 0.0;         ///< one-step errors for t >= period
    std::size_t n_obs = 0;
    Date origin;
    std::int64_t step_days = 1;
};

enum class Objective { Sse, Mae, Mape };
enum class OptimizeStrategy { Grid, NelderMead };

/// l_t = alpha*y_t + (1-alpha)*l_{t-1}, seeded with l_0 = y_0.
SesModel ses_fit(const TimeSeries& series, double alpha);
Forecast ses_forecast(const SesModel& model, std::size_t horizon);

/// Level+trend recursions seeded with L_0 = y_0, T_0 = y_1 - y_0.
HoltModel holt_fit(const TimeSeries& series, double alpha, double beta);

/// Same recursions from an explicit seed state treated as the state at
/// index start-1; fitted values and errors cover t >= start.
HoltModel holt_fit(const TimeSeries& series, double alpha, double beta, double level0,
                   double trend0, std::size_t start);

Forecast holt_forecast(const HoltModel& model, std::size_t horizon);

/**
 * Additive triple smoothing:
 *
 *   L(t) = alpha*(Y(t) - S(t-m)) + (1-alpha)*(L(t-1) + T(t-1))
 *   T(t) = beta*(L(t) - L(t-1)) + (1-beta)*T(t-1)
 *   S(t) = gamma*(Y(t) - L(t)) + (1-gamma)*S(t-m)
 *
 * Seeds (first period): L = mean of the first period, T = difference of
 * the first two period means divided by m, S_k = y_k - L re-centered to
 * sum to zero. The one-step fitted value at t is L(t-1)+T(t-1)+S(t-m).
 * Requires at least two full periods.
 */
HoltWintersModel holt_winters_fit(const TimeSeries& series, const HoltWintersParams& params);

/// F(t+h) = L + h*T + S at phase (n_obs + h - 1) mod m, cycling the
/// final stored seasonal pattern.
Forecast holt_winters_forecast(const HoltWintersModel& model, std::size_t horizon);

/**
 * Minimise the in-sample objective over (alpha, beta, gamma). The grid
 * strategy scans a coarse 0.1-step lattice (plus the 0.01/0.99 edges)
 * and then repeatedly refines a +-0.09 box at 0.01 resolution around
 * the incumbent until it stops moving; ties prefer the smallest
 * (alpha, beta, gamma). Nelder-Mead runs a bounded simplex from
 * (0.3, 0.1, 0.1) with coordinates clamped to [0.001, 0.999]. Both are
 * deterministic. Returns the winning parameters and the refit model.
 */
std::pair<HoltWintersParams, HoltWintersModel> holt_winters_optimize(
    const TimeSeries& series, std::size_t period, Objective objective = Objective::Sse,
    OptimizeStrategy strategy = OptimizeStrategy::Grid);

/// The optimizer's target: SSE/MAE/MAPE of one-step fitted values over
/// the non-initialization region.
double smoothing_objective(const HoltWintersModel& model, const TimeSeries& series,
                           Objective objective);

} // namespace tsfore

#endif // TSFORE_SMOOTHING_HPP
