#include "tsfore/smoothing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "tsfore/errors.hpp"

namespace tsfore {

namespace {

void check_weight(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        raise(ErrorCode::ParamOutOfRange,
              std::string(name) + " = " + std::to_string(value) + " outside [0, 1]");
    }
}

void check_horizon(std::size_t horizon) {
    if (horizon == 0) raise(ErrorCode::ParamOutOfRange, "forecast horizon must be positive");
}

} // namespace

SesModel ses_fit(const TimeSeries& series, double alpha) {
    check_weight(alpha, "alpha");
    const auto& y = series.values();
    const std::size_t n = y.size();
    if (n < 2) raise(ErrorCode::SeriesTooShort, "simple smoothing needs at least 2 points");

    SesModel m;
    m.alpha = alpha;
    m.origin = series.date_at(n - 1);
    m.step_days = series.step_days();
    m.fitted.resize(n);
    m.fitted[0] = y[0];
    double level = y[0];
    for (std::size_t t = 1; t < n; ++t) {
        m.fitted[t] = level;
        const double e = y[t] - level;
        m.training_sse += e * e;
        level = alpha * y[t] + (1.0 - alpha) * level;
    }
    m.level = level;
    return m;
}

Forecast ses_forecast(const SesModel& model, std::size_t horizon) {
    check_horizon(horizon);
    Forecast f{horizon, std::vector<double>(horizon, model.level), model.origin,
               model.step_days};
    return f;
}

HoltModel holt_fit(const TimeSeries& series, double alpha, double beta) {
    if (series.size() < 3) {
        raise(ErrorCode::SeriesTooShort, "level+trend smoothing needs at least 3 points");
    }
    const auto& y = series.values();
    return holt_fit(series, alpha, beta, y[0], y[1] - y[0], 1);
}

HoltModel holt_fit(const TimeSeries& series, double alpha, double beta, double level0,
                   double trend0, std::size_t start) {
    check_weight(alpha, "alpha");
    check_weight(beta, "beta");
    const auto& y = series.values();
    const std::size_t n = y.size();
    if (start == 0 || start >= n) {
        raise(ErrorCode::ParamOutOfRange,
              "seed index " + std::to_string(start) + " outside 1.." + std::to_string(n - 1));
    }

    HoltModel m;
    m.alpha = alpha;
    m.beta = beta;
    m.init_length = start;
    m.origin = series.date_at(n - 1);
    m.step_days = series.step_days();
    m.fitted.resize(n);
    m.level_path.resize(n);
    m.trend_path.resize(n);

    double level = level0;
    double trend = trend0;
    for (std::size_t t = 0; t < start; ++t) {
        m.fitted[t] = level0;
        m.level_path[t] = level0;
        m.trend_path[t] = trend0;
    }
    for (std::size_t t = start; t < n; ++t) {
        m.fitted[t] = level + trend;
        const double e = y[t] - m.fitted[t];
        m.training_sse += e * e;
        const double next_level = alpha * y[t] + (1.0 - alpha) * (level + trend);
        trend = beta * (next_level - level) + (1.0 - beta) * trend;
        level = next_level;
        m.level_path[t] = level;
        m.trend_path[t] = trend;
    }
    m.level = level;
    m.trend = trend;
    return m;
}

Forecast holt_forecast(const HoltModel& model, std::size_t horizon) {
    check_horizon(horizon);
    Forecast f{horizon, std::vector<double>(horizon), model.origin, model.step_days};
    for (std::size_t h = 1; h <= horizon; ++h) {
        f.values[h - 1] = model.level + static_cast<double>(h) * model.trend;
    }
    return f;
}

HoltWintersModel holt_winters_fit(const TimeSeries& series, const HoltWintersParams& params) {
    check_weight(params.alpha, "alpha");
    check_weight(params.beta, "beta");
    check_weight(params.gamma, "gamma");
    const std::size_t m = params.period;
    if (m < 2) raise(ErrorCode::ParamOutOfRange, "seasonal period must be at least 2");
    const auto& y = series.values();
    const std::size_t n = y.size();
    if (n < 2 * m) {
        raise(ErrorCode::SeriesTooShort, "need two full periods (" + std::to_string(2 * m) +
                                             " points) for period " + std::to_string(m) +
                                             ", have " + std::to_string(n));
    }

    // Seeds: level = first-period mean, trend = growth between the first
    // two period means spread over m steps, seasonals = first-period
    // offsets re-centered to sum to zero.
    double first = 0.0, second = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        first += y[k];
        second += y[m + k];
    }
    first /= static_cast<double>(m);
    second /= static_cast<double>(m);
    double level = first;
    double trend = (second - first) / static_cast<double>(m);

    std::vector<double> seasonals(m);
    double mean_offset = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        seasonals[k] = y[k] - level;
        mean_offset += seasonals[k];
    }
    mean_offset /= static_cast<double>(m);
    for (auto& s : seasonals) s -= mean_offset;

    HoltWintersModel model;
    model.params = params;
    model.init_length = m;
    model.n_obs = n;
    model.origin = series.date_at(n - 1);
    model.step_days = series.step_days();
    model.fitted.resize(n);
    model.level_path.resize(n);
    model.trend_path.resize(n);
    model.seasonal_path.resize(n);
    for (std::size_t t = 0; t < m; ++t) {
        model.fitted[t] = level + seasonals[t];
        model.level_path[t] = level;
        model.trend_path[t] = trend;
        model.seasonal_path[t] = seasonals[t];
    }

    const double a = params.alpha, b = params.beta, g = params.gamma;
    for (std::size_t t = m; t < n; ++t) {
        const double s_old = seasonals[t % m]; // S(t-m)
        model.fitted[t] = level + trend + s_old;
        const double e = y[t] - model.fitted[t];
        model.training_sse += e * e;

        const double next_level = a * (y[t] - s_old) + (1.0 - a) * (level + trend);
        trend = b * (next_level - level) + (1.0 - b) * trend;
        level = next_level;
        seasonals[t % m] = g * (y[t] - level) + (1.0 - g) * s_old;

        model.level_path[t] = level;
        model.trend_path[t] = trend;
        model.seasonal_path[t] = seasonals[t % m];
    }
    model.level = level;
    model.trend = trend;
    model.seasonals = std::move(seasonals);
    return model;
}

Forecast holt_winters_forecast(const HoltWintersModel& model, std::size_t horizon) {
    check_horizon(horizon);
    const std::size_t m = model.params.period;
    Forecast f{horizon, std::vector<double>(horizon), model.origin, model.step_days};
    for (std::size_t h = 1; h <= horizon; ++h) {
        const std::size_t phase = (model.n_obs + h - 1) % m;
        f.values[h - 1] =
            model.level + static_cast<double>(h) * model.trend + model.seasonals[phase];
    }
    return f;
}

double smoothing_objective(const HoltWintersModel& model, const TimeSeries& series,
                           Objective objective) {
    const auto& y = series.values();
    if (y.size() != model.fitted.size()) {
        raise(ErrorCode::LengthMismatch, "model was fit on a different series length");
    }
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t t = model.init_length; t < y.size(); ++t) {
        const double e = y[t] - model.fitted[t];
        switch (objective) {
            case Objective::Sse: sum += e * e; break;
            case Objective::Mae: sum += std::abs(e); break;
            case Objective::Mape:
                if (y[t] == 0.0) {
                    raise(ErrorCode::NonPositiveValue,
                          "percentage error undefined at zero observation");
                }
                sum += std::abs(e / y[t]);
                break;
        }
        ++count;
    }
    if (objective == Objective::Sse) return sum;
    return sum / static_cast<double>(count);
}

namespace {

double evaluate_params(const TimeSeries& series, std::size_t period, Objective objective,
                       double alpha, double beta, double gamma) {
    HoltWintersParams p{alpha, beta, gamma, period};
    auto model = holt_winters_fit(series, p);
    return smoothing_objective(model, series, objective);
}

struct Incumbent {
    double alpha = 0.0, beta = 0.0, gamma = 0.0;
    double score = 0.0;
    bool set = false;

    void offer(double a, double b, double g, double s) {
        if (!set || s < score) {
            alpha = a;
            beta = b;
            gamma = g;
            score = s;
            set = true;
        }
    }
};

double snap(double x) { return std::round(x * 100.0) / 100.0; }

std::vector<double> refine_axis(double center) {
    std::vector<double> out;
    for (int j = -9; j <= 9; ++j) {
        double x = snap(center + 0.01 * j);
        x = std::clamp(x, 0.01, 0.99);
        if (out.empty() || x > out.back()) out.push_back(x);
    }
    return out;
}

Incumbent grid_minimize(const TimeSeries& series, std::size_t period, Objective objective) {
    std::vector<double> coarse = {0.01};
    for (int i = 1; i <= 9; ++i) coarse.push_back(i / 10.0);
    coarse.push_back(0.99);

    Incumbent best;
    for (double a : coarse) {
        for (double b : coarse) {
            for (double g : coarse) {
                best.offer(a, b, g, evaluate_params(series, period, objective, a, b, g));
            }
        }
    }
    // Re-center the fine box until the incumbent stops moving, so the
    // result is locally minimal at 0.01 resolution, not just the best
    // point of one fixed box.
    for (int round = 0; round < 30; ++round) {
        const Incumbent before = best;
        for (double a : refine_axis(before.alpha)) {
            for (double b : refine_axis(before.beta)) {
                for (double g : refine_axis(before.gamma)) {
                    best.offer(a, b, g, evaluate_params(series, period, objective, a, b, g));
                }
            }
        }
        if (best.alpha == before.alpha && best.beta == before.beta &&
            best.gamma == before.gamma) {
            break;
        }
    }
    return best;
}

Incumbent nelder_mead_minimize(const TimeSeries& series, std::size_t period,
                               Objective objective) {
    using Point = std::array<double, 3>;
    auto clamp_point = [](Point x) {
        for (double& c : x) c = std::clamp(c, 0.001, 0.999);
        return x;
    };
    auto eval = [&](const Point& x) {
        const Point c = clamp_point(x);
        return evaluate_params(series, period, objective, c[0], c[1], c[2]);
    };

    std::array<Point, 4> simplex = {Point{0.3, 0.1, 0.1}, Point{0.4, 0.1, 0.1},
                                    Point{0.3, 0.2, 0.1}, Point{0.3, 0.1, 0.2}};
    std::array<double, 4> f;
    for (std::size_t i = 0; i < 4; ++i) f[i] = eval(simplex[i]);

    auto order = [&] {
        std::array<std::size_t, 4> idx = {0, 1, 2, 3};
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (f[a] != f[b]) return f[a] < f[b];
            return simplex[a] < simplex[b]; // deterministic tie-break
        });
        std::array<Point, 4> s2;
        std::array<double, 4> f2;
        for (std::size_t i = 0; i < 4; ++i) {
            s2[i] = simplex[idx[i]];
            f2[i] = f[idx[i]];
        }
        simplex = s2;
        f = f2;
    };

    for (int iter = 0; iter < 400; ++iter) {
        order();
        if (f[3] - f[0] < 1e-13) break;

        Point centroid{0, 0, 0};
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t c = 0; c < 3; ++c) centroid[c] += simplex[i][c] / 3.0;
        }
        auto blend = [&](double w) {
            Point p;
            for (std::size_t c = 0; c < 3; ++c) p[c] = centroid[c] + w * (simplex[3][c] - centroid[c]);
            return p;
        };

        const Point reflected = blend(-1.0);
        const double fr = eval(reflected);
        if (fr < f[0]) {
            const Point expanded = blend(-2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                simplex[3] = expanded;
                f[3] = fe;
            } else {
                simplex[3] = reflected;
                f[3] = fr;
            }
        } else if (fr < f[2]) {
            simplex[3] = reflected;
            f[3] = fr;
        } else {
            const Point contracted = blend(fr < f[3] ? -0.5 : 0.5);
            const double fc = eval(contracted);
            if (fc < std::min(fr, f[3])) {
                simplex[3] = contracted;
                f[3] = fc;
            } else {
                for (std::size_t i = 1; i < 4; ++i) {
                    for (std::size_t c = 0; c < 3; ++c) {
                        simplex[i][c] = simplex[0][c] + 0.5 * (simplex[i][c] - simplex[0][c]);
                    }
                    f[i] = eval(simplex[i]);
                }
            }
        }
    }
    order();

    const Point winner = clamp_point(simplex[0]);
    Incumbent best;
    best.offer(winner[0], winner[1], winner[2], f[0]);
    return best;
}

} // namespace

std::pair<HoltWintersParams, HoltWintersModel> holt_winters_optimize(const TimeSeries& series,
                                                                     std::size_t period,
                                                                     Objective objective,
                                                                     OptimizeStrategy strategy) {
    if (period < 2) raise(ErrorCode::ParamOutOfRange, "seasonal period must be at least 2");
    if (series.size() < 2 * period) {
        raise(ErrorCode::SeriesTooShort,
              "need two full periods to optimize, have " + std::to_string(series.size()));
    }

    const Incumbent best = (strategy == OptimizeStrategy::Grid)
                               ? grid_minimize(series, period, objective)
                               : nelder_mead_minimize(series, period, objective);

    HoltWintersParams params{best.alpha, best.beta, best.gamma, period};
    auto model = holt_winters_fit(series, params);
    return {params, std::move(model)};
}

} // namespace tsfore
