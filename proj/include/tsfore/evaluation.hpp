#ifndef TSFORE_EVALUATION_HPP
#define TSFORE_EVALUATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tsfore/date.hpp"
#include "tsfore/metrics.hpp"
#include "tsfore/regressors.hpp"
#include "tsfore/time_series.hpp"

namespace tsfore {

/// Identity of the series an evaluation ran on: row count, date range and
/// an FNV-1a checksum over the value bits. Reports refuse to mix rows
/// whose fingerprints disagree.
struct DatasetFingerprint {
    std::size_t rows = 0;
    Date first;
    Date last;
    std::uint64_t checksum = 0;

    bool operator==(const DatasetFingerprint&) const = default;
};

DatasetFingerprint fingerprint_series(const TimeSeries& series);

struct OlsSpec {};

/// A fixed penalty when `lambda` is set; otherwise the penalty is chosen
/// from a grid_size-point logarithmic grid on lambda_max * [1e-4, 1] by
/// holdout MAE over the trailing fifth of the training rows, then the
/// model is refitted on the full training set.
struct LassoSpec {
    std::optional<double> lambda;
    std::size_t grid_size = 20;
};

/// A fixed configuration when `config` is set; otherwise grid_search over
/// default_tree_grid() on the training rows picks one.
struct TreeSpec {
    std::optional<TreeConfig> config;
};

using ModelSpec = std::variant<OlsSpec, LassoSpec, TreeSpec>;

/**
 * One evaluated model on one chronological split. Predictions are
 * one-step-ahead: the model is fitted once on the training rows and each
 * test prediction uses the true lagged observations of its own row, never
 * a recursive forecast. Metrics are computed on unscaled prices.
 */
struct BacktestResult {
    std::string model_name;
    MetricSet metrics;
    Date train_end;  ///< date of the last training target
    Date test_start; ///< date of the first test target
    DatasetFingerprint fingerprint;
    std::vector<Date> test_dates;
    std::vector<double> actual;
    std::vector<double> predicted;
    double lambda_used = 0.0; ///< lasso only; the penalty actually fitted
    std::optional<LinearModel> linear;
    std::optional<TreeNode> tree;
};

/// Lag-matrix backtest: build window features over the whole series,
/// split the rows chronologically (train takes ceil(rows*(1-test_ratio))),
/// fit on the front, score the back.
BacktestResult backtest(const TimeSeries& series, const ModelSpec& spec, std::size_t window,
                        double test_ratio, std::uint64_t seed);

struct ReportRow {
    std::string model_name;
    MetricSet metrics;
    double lambda_used = 0.0;
    bool best_mae = false;
    bool best_r2 = false;
};

struct EvaluationReport {
    std::vector<ReportRow> rows; ///< in the order supplied to compare()
    Date train_end;
    Date test_start;
    DatasetFingerprint fingerprint;
};

/// Annotate the lowest-MAE and highest-score rows (first wins ties);
/// metric values pass through untouched. All rows must share one
/// fingerprint and split, else FingerprintMismatch.
EvaluationReport compare(const std::vector<BacktestResult>& results);

nlohmann::json report_to_json(const EvaluationReport& report);

/// Aligned three-column text table (Method | MAE(Val) | Score); a '*'
/// suffix marks the best value in each metric column.
std::string report_to_table(const EvaluationReport& report);

} // namespace tsfore

#endif // TSFORE_EVALUATION_HPP
