#include "tsfore/evaluation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <string>

#include "tsfore/errors.hpp"
#include "tsfore/lag.hpp"
#include "tsfore/transforms.hpp"

namespace tsfore {

namespace {

void fnv_mix(std::uint64_t& h, std::uint64_t bits) {
    for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffu;
        h *= 1099511628211ull;
    }
}

struct RowSplit {
    LagMatrix train;
    std::vector<std::vector<double>> test_rows;
    std::vector<double> test_targets;
    std::size_t train_count = 0;
};

RowSplit split_matrix_rows(const LagMatrix& matrix, double test_ratio) {
    const std::size_t n = matrix.row_count();
    if (n < 2) {
        raise(ErrorCode::DegenerateSplit, "cannot split " + std::to_string(n) + " feature rows");
    }
    const std::size_t train_n = train_size_for_split(n, test_ratio);
    if (train_n == 0 || train_n >= n) {
        raise(ErrorCode::DegenerateSplit, "split leaves an empty side (train " +
                                              std::to_string(train_n) + " of " + std::to_string(n) +
                                              " rows)");
    }
    RowSplit out;
    out.train_count = train_n;
    out.train.window = matrix.window;
    const auto mid_row = matrix.rows.begin() + static_cast<std::ptrdiff_t>(train_n);
    const auto mid_tgt = matrix.targets.begin() + static_cast<std::ptrdiff_t>(train_n);
    out.train.rows.assign(matrix.rows.begin(), mid_row);
    out.train.targets.assign(matrix.targets.begin(), mid_tgt);
    out.test_rows.assign(mid_row, matrix.rows.end());
    out.test_targets.assign(mid_tgt, matrix.targets.end());
    return out;
}

/// Logarithmic penalty grid on lambda_max * [1e-4, 1], scored by MAE on
/// the trailing fifth of the training rows; smallest winning lambda on
/// ties. Degenerates to 0 when lambda_max is 0 (constant targets).
double select_lasso_lambda(const LagMatrix& train, const LassoSpec& spec) {
    if (spec.grid_size < 2) {
        raise(ErrorCode::ParamOutOfRange, "lasso grid needs at least 2 points");
    }
    const double lam_max = lasso_lambda_max(train, train.targets);
    if (lam_max == 0.0) return 0.0;

    const RowSplit sub = split_matrix_rows(train, 0.2);
    double best_lambda = 0.0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < spec.grid_size; ++i) {
        const double exponent =
            -4.0 + 4.0 * static_cast<double>(i) / static_cast<double>(spec.grid_size - 1);
        const double lambda = lam_max * std::pow(10.0, exponent);
        const LinearModel model = lasso_fit(sub.train, sub.train.targets, lambda);
        const double score = mae(sub.test_targets, predict_linear(model, sub.test_rows));
        if (i == 0 || score < best_score) {
            best_lambda = lambda;
            best_score = score;
        }
    }
    return best_lambda;
}

} // namespace

DatasetFingerprint fingerprint_series(const TimeSeries& series) {
    DatasetFingerprint f;
    f.rows = series.size();
    f.first = series.start();
    f.last = series.end();
    std::uint64_t h = 14695981039346656037ull;
    fnv_mix(h, static_cast<std::uint64_t>(series.size()));
    fnv_mix(h, static_cast<std::uint64_t>(series.start().serial()));
    fnv_mix(h, static_cast<std::uint64_t>(series.step_days()));
    for (double v : series.values()) fnv_mix(h, std::bit_cast<std::uint64_t>(v));
    f.checksum = h;
    return f;
}

BacktestResult backtest(const TimeSeries& series, const ModelSpec& spec, std::size_t window,
                        double test_ratio, std::uint64_t seed) {
    const LagMatrix matrix = make_lag_matrix(series, window);
    RowSplit split = split_matrix_rows(matrix, test_ratio);

    BacktestResult result;
    result.fingerprint = fingerprint_series(series);
    result.train_end = series.date_at(split.train_count - 1 + window);
    result.test_start = series.date_at(split.train_count + window);
    result.test_dates.reserve(split.test_targets.size());
    for (std::size_t r = 0; r < split.test_targets.size(); ++r) {
        result.test_dates.push_back(series.date_at(split.train_count + r + window));
    }
    result.actual = split.test_targets;

    if (std::holds_alternative<OlsSpec>(spec)) {
        result.model_name = "ols";
        LinearModel model = ols_fit(split.train, split.train.targets);
        result.predicted = predict_linear(model, split.test_rows);
        result.linear = std::move(model);
    } else if (const auto* lasso = std::get_if<LassoSpec>(&spec)) {
        result.model_name = "lasso";
        const double lambda = lasso->lambda ? *lasso->lambda : select_lasso_lambda(split.train, *lasso);
        LinearModel model = lasso_fit(split.train, split.train.targets, lambda);
        result.lambda_used = lambda;
        result.predicted = predict_linear(model, split.test_rows);
        result.linear = std::move(model);
    } else {
        result.model_name = "tree";
        const TreeSpec& tree_spec = std::get<TreeSpec>(spec);
        const TreeConfig config =
            tree_spec.config
                ? *tree_spec.config
                : grid_search(split.train, split.train.targets, default_tree_grid(), 0.2, seed)
                      .best_config;
        TreeNode tree = tree_fit(split.train, split.train.targets, config, seed);
        result.predicted = predict_tree(tree, split.test_rows);
        result.tree = std::move(tree);
    }
    result.metrics = evaluate_point_forecasts(result.actual, result.predicted);
    return result;
}

EvaluationReport compare(const std::vector<BacktestResult>& results) {
    if (results.empty()) raise(ErrorCode::EmptyInput, "nothing to compare");
    const BacktestResult& head = results.front();
    EvaluationReport report;
    report.train_end = head.train_end;
    report.test_start = head.test_start;
    report.fingerprint = head.fingerprint;
    for (const BacktestResult& r : results) {
        if (!(r.fingerprint == head.fingerprint) || r.train_end != head.train_end ||
            r.test_start != head.test_start) {
            raise(ErrorCode::FingerprintMismatch,
                  "row '" + r.model_name + "' was evaluated on a different dataset or split");
        }
        report.rows.push_back({r.model_name, r.metrics, r.lambda_used, false, false});
    }
    std::size_t best_mae = 0;
    std::size_t best_r2 = 0;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        if (report.rows[i].metrics.mae < report.rows[best_mae].metrics.mae) best_mae = i;
        if (report.rows[i].metrics.r2 > report.rows[best_r2].metrics.r2) best_r2 = i;
    }
    report.rows[best_mae].best_mae = true;
    report.rows[best_r2].best_r2 = true;
    return report;
}

nlohmann::json report_to_json(const EvaluationReport& report) {
    char checksum[17];
    std::snprintf(checksum, sizeof checksum, "%016llx",
                  static_cast<unsigned long long>(report.fingerprint.checksum));
    nlohmann::json doc;
    doc["fingerprint"] = {{"rows", report.fingerprint.rows},
                          {"first", report.fingerprint.first.to_string()},
                          {"last", report.fingerprint.last.to_string()},
                          {"checksum", checksum}};
    doc["split"] = {{"train_end", report.train_end.to_string()},
                    {"test_start", report.test_start.to_string()}};
    doc["rows"] = nlohmann::json::array();
    for (const ReportRow& row : report.rows) {
        doc["rows"].push_back({{"model", row.model_name},
                               {"mae", row.metrics.mae},
                               {"mse", row.metrics.mse},
                               {"r2", row.metrics.r2},
                               {"n", row.metrics.n},
                               {"lambda", row.lambda_used},
                               {"best_mae", row.best_mae},
                               {"best_r2", row.best_r2}});
    }
    return doc;
}

std::string report_to_table(const EvaluationReport& report) {
    auto fixed = [](double v, int places, bool star) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", places, v);
        std::string s(buf);
        if (star) s += '*';
        return s;
    };
    std::vector<std::string> names = {"Method"};
    std::vector<std::string> maes = {"MAE(Val)"};
    std::vector<std::string> scores = {"Score"};
    for (const ReportRow& row : report.rows) {
        names.push_back(row.model_name);
        maes.push_back(fixed(row.metrics.mae, 4, row.best_mae));
        scores.push_back(fixed(row.metrics.r2, 6, row.best_r2));
    }
    auto width_of = [](const std::vector<std::string>& col) {
        std::size_t w = 0;
        for (const std::string& s : col) w = std::max(w, s.size());
        return w;
    };
    const std::size_t w1 = width_of(names);
    const std::size_t w2 = width_of(maes);
    const std::size_t w3 = width_of(scores);

    std::string out;
    auto emit = [&](const std::string& a, const std::string& b, const std::string& c) {
        std::string line = a + std::string(w1 - a.size(), ' ');
        line += " | " + std::string(w2 - b.size(), ' ') + b;
        line += " | " + std::string(w3 - c.size(), ' ') + c;
        out += line;
        out += '\n';
    };
    emit(names[0], maes[0], scores[0]);
    out += std::string(w1, '-') + " | " + std::string(w2, '-') + " | " + std::string(w3, '-') + "\n";
    for (std::size_t i = 1; i < names.size(); ++i) emit(names[i], maes[i], scores[i]);
    return out;
}

} // namespace tsfore
