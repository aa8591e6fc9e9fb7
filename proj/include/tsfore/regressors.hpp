#ifndef TSFORE_REGRESSORS_HPP
#define TSFORE_REGRESSORS_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "tsfore/lag.hpp"

namespace tsfore {

/**
 * Linear predictor y = X·beta + intercept over lag features. l1_penalty
 * is 0 for a least-squares fit and the lasso lambda otherwise. `fitted`
 * stores the training-row predictions made at fit time; `converged` is
 * false only when a lasso fit stopped at max_iter.
 */
struct LinearModel {
    std::vector<double> coefficients;
    double intercept = 0.0;
    std::size_t feature_count = 0;
    double l1_penalty = 0.0;
    std::vector<double> fitted;
    bool converged = true;
};

/// Least squares via Householder QR (never the raw normal equations).
/// Requires rows >= feature_count + 1; a linearly dependent feature
/// raises RankDeficient naming the column.
LinearModel ols_fit(const LagMatrix& features, const std::vector<double>& targets);

/**
 * Lasso solved by cyclic coordinate descent with soft-thresholding on
 *   (1/2n)·sum (y - X·beta - b)^2 + lambda·sum |beta_j|.
 * Columns are standardized internally for the solve; coefficients come
 * back on the original scale and the intercept is never penalized. The
 * descent ends when a full cycle's largest original-scale coefficient
 * change drops below `tol`; hitting max_iter instead flags
 * converged = false on the returned model.
 */
LinearModel lasso_fit(const LagMatrix& features, const std::vector<double>& targets,
                      double l1_penalty, double tol = 1e-8, std::size_t max_iter = 10000);

/// Smallest penalty that zeroes every lasso coefficient:
/// max_j |x_j^T (y - mean(y))| / n.
double lasso_lambda_max(const LagMatrix& features, const std::vector<double>& targets);

/// X·beta + intercept per row. Raises WidthMismatch unless every row has
/// exactly feature_count values.
std::vector<double> predict_linear(const LinearModel& model,
                                   const std::vector<std::vector<double>>& rows);

enum class MaxFeatures { All, Sqrt };

/**
 * Regression-tree fitting controls. The split criterion is always the
 * count-normalized variance reduction and the splitter always scans every
 * candidate midpoint; neither is configurable. Sqrt considers
 * max(1, floor(sqrt(k))) features per node, drawn with the fit's seeded
 * engine.
 */
struct TreeConfig {
    std::size_t max_depth = 15;
    std::size_t min_samples_leaf = 10;
    double min_impurity_decrease = 0.5;
    MaxFeatures max_features = MaxFeatures::All;

    bool operator==(const TreeConfig&) const = default;
};

/**
 * Binary regression-tree node. Internal nodes own both children and
 * carry the split; every node keeps the mean target and sample count of
 * the rows it was grown from.
 */
struct TreeNode {
    std::size_t feature_index = 0;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    double prediction = 0.0;
    std::size_t sample_count = 0;

    bool is_leaf() const { return left == nullptr; }
};

/**
 * Greedy recursive partitioning. Split quality is
 *   (N·Var(parent) - N_L·Var(left) - N_R·Var(right)) / N_total
 * with population variances and N_total the full training-row count, so
 * min_impurity_decrease is in target units squared. Candidate thresholds
 * are midpoints between consecutive sorted unique values; ties prefer the
 * lowest feature index, then the lowest threshold. A split must clear the
 * decrease gate with a strictly positive value, so constant regions
 * become leaves even at min_impurity_decrease = 0. A node at max_depth
 * never splits (the root is at depth 0).
 */
TreeNode tree_fit(const LagMatrix& features, const std::vector<double>& targets,
                  const TreeConfig& config = {}, std::uint64_t seed = 0);

/// Route each row (left when value <= threshold) to its leaf mean.
/// Raises WidthMismatch when a row lacks a feature the tree tests.
std::vector<double> predict_tree(const TreeNode& tree,
                                 const std::vector<std::vector<double>>& rows);

struct GridSearchResult {
    TreeConfig best_config;
    double best_score = 0.0;
    std::vector<std::pair<TreeConfig, double>> trials; ///< in grid order
};

/**
 * Chronological holdout search: each config is fitted on the leading rows
 * and scored by MAE on the trailing `holdout_fraction` of rows; the
 * lowest score wins, first in grid order on ties. Every fit reuses the
 * same seed, so the result is deterministic.
 */
GridSearchResult grid_search(const LagMatrix& features, const std::vector<double>& targets,
                             const std::vector<TreeConfig>& grid, double holdout_fraction,
                             std::uint64_t seed);

/// Stock search grid around the shipped defaults (an artifact choice,
/// not a tuned set).
std::vector<TreeConfig> default_tree_grid();

} // namespace tsfore

#endif // TSFORE_REGRESSORS_HPP
