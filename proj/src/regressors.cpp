#include "tsfore/regressors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>

#include "tsfore/errors.hpp"
#include "tsfore/linalg.hpp"
#include "tsfore/metrics.hpp"
#include "tsfore/transforms.hpp"

namespace tsfore {

namespace {

void validate_matrix(const LagMatrix& features, const std::vector<double>& targets) {
    if (features.rows.empty()) raise(ErrorCode::EmptyInput, "feature matrix has no rows");
    if (features.window == 0) raise(ErrorCode::ParamOutOfRange, "feature window must be positive");
    if (targets.size() != features.rows.size()) {
        raise(ErrorCode::LengthMismatch, "targets length " + std::to_string(targets.size()) +
                                             " != row count " + std::to_string(features.rows.size()));
    }
    for (std::size_t i = 0; i < features.rows.size(); ++i) {
        if (features.rows[i].size() != features.window) {
            raise(ErrorCode::WidthMismatch, "row " + std::to_string(i) + " has width " +
                                                std::to_string(features.rows[i].size()) +
                                                ", expected " + std::to_string(features.window));
        }
    }
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

} // namespace

LinearModel ols_fit(const LagMatrix& features, const std::vector<double>& targets) {
    validate_matrix(features, targets);
    const std::size_t n = features.rows.size();
    const std::size_t k = features.window;
    if (n < k + 1) {
        raise(ErrorCode::TooFewRows, "least squares needs at least " + std::to_string(k + 1) +
                                         " rows for " + std::to_string(k) + " features, got " +
                                         std::to_string(n));
    }
    // Intercept column last, so a rank failure inside the solver names the
    // offending feature index directly.
    std::vector<std::vector<double>> design(n, std::vector<double>(k + 1, 1.0));
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(features.rows[i].begin(), features.rows[i].end(), design[i].begin());
    }
    linalg::LeastSquaresResult sol;
    try {
        sol = linalg::solve_least_squares(design, targets);
    } catch (const Error& e) {
        std::size_t column = k + 1;
        if (e.code() == ErrorCode::RankDeficient &&
            std::sscanf(e.what(), "%*[^0-9]%zu", &column) == 1 && column == k) {
            raise(ErrorCode::RankDeficient, "intercept is linearly dependent (a feature is constant)");
        }
        throw;
    }
    LinearModel model;
    model.coefficients.assign(sol.coefficients.begin(),
                              sol.coefficients.begin() + static_cast<std::ptrdiff_t>(k));
    model.intercept = sol.coefficients[k];
    model.feature_count = k;
    model.l1_penalty = 0.0;
    model.converged = true;
    model.fitted = predict_linear(model, features.rows);
    return model;
}

double lasso_lambda_max(const LagMatrix& features, const std::vector<double>& targets) {
    validate_matrix(features, targets);
    const std::size_t n = features.rows.size();
    const double y_mean = mean_of(targets);
    double lam = 0.0;
    for (std::size_t j = 0; j < features.window; ++j) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dot += features.rows[i][j] * (targets[i] - y_mean);
        }
        lam = std::max(lam, std::abs(dot) / static_cast<double>(n));
    }
    return lam;
}

LinearModel lasso_fit(const LagMatrix& features, const std::vector<double>& targets,
                      double l1_penalty, double tol, std::size_t max_iter) {
    validate_matrix(features, targets);
    const std::size_t n = features.rows.size();
    const std::size_t k = features.window;
    if (n < 2) raise(ErrorCode::TooFewRows, "lasso needs at least 2 rows, got " + std::to_string(n));
    if (!(l1_penalty >= 0.0) || !std::isfinite(l1_penalty)) {
        raise(ErrorCode::ParamOutOfRange, "l1 penalty must be a nonnegative real");
    }
    if (!(tol > 0.0)) raise(ErrorCode::ParamOutOfRange, "tol must be positive");
    if (max_iter == 0) raise(ErrorCode::ParamOutOfRange, "max_iter must be positive");

    const double y_mean = mean_of(targets);

    LinearModel model;
    model.coefficients.assign(k, 0.0);
    model.feature_count = k;
    model.l1_penalty = l1_penalty;
    model.converged = true;

    // At or above lambda_max the all-zero solution is exactly optimal; skip
    // the descent so the zeros are exact, not within tolerance.
    if (l1_penalty > 0.0 && l1_penalty >= lasso_lambda_max(features, targets)) {
        model.intercept = y_mean;
        model.fitted = predict_linear(model, features.rows);
        return model;
    }

    // Standardize columns (population std); constant columns keep
    // coefficient 0 and sit out the descent.
    std::vector<double> mu(k, 0.0);
    std::vector<double> sigma(k, 0.0);
    std::vector<double> col_norm(k, 0.0); // (1/n)·z_j^T z_j, ~1 up to rounding
    std::vector<std::vector<double>> z(k); // standardized columns, column-major
    for (std::size_t j = 0; j < k; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += features.rows[i][j];
        m /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = features.rows[i][j] - m;
            ss += d * d;
        }
        mu[j] = m;
        sigma[j] = std::sqrt(ss / static_cast<double>(n));
        if (sigma[j] == 0.0) continue;
        z[j].resize(n);
        double zz = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[j][i] = (features.rows[i][j] - m) / sigma[j];
            zz += z[j][i] * z[j][i];
        }
        col_norm[j] = zz / static_cast<double>(n);
    }

    // Centered columns make the optimal intercept mean(y) throughout, so the
    // descent runs on r = (y - mean) - Z·beta_std alone.
    std::vector<double> resid(n);
    for (std::size_t i = 0; i < n; ++i) resid[i] = targets[i] - y_mean;
    std::vector<double> beta_std(k, 0.0);

    bool converged = false;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        double max_change = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (sigma[j] == 0.0) continue;
            const double old = beta_std[j];
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += z[j][i] * resid[i];
            const double rho = dot / static_cast<double>(n) + col_norm[j] * old;
            const double thr = l1_penalty / sigma[j];
            double next = 0.0;
            if (rho > thr) {
                next = (rho - thr) / col_norm[j];
            } else if (rho < -thr) {
                next = (rho + thr) / col_norm[j];
            }
            if (next != old) {
                const double delta = next - old;
                for (std::size_t i = 0; i < n; ++i) resid[i] -= z[j][i] * delta;
                beta_std[j] = next;
            }
            max_change = std::max(max_change, std::abs(next - old) / sigma[j]);
        }
        if (max_change < tol) {
            converged = true;
            break;
        }
    }

    double shift = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (sigma[j] == 0.0) continue;
        model.coefficients[j] = beta_std[j] / sigma[j];
        shift += mu[j] * model.coefficients[j];
    }
    model.intercept = y_mean - shift;
    model.converged = converged;
    model.fitted = predict_linear(model, features.rows);
    return model;
}

std::vector<double> predict_linear(const LinearModel& model,
                                   const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != model.feature_count) {
            raise(ErrorCode::WidthMismatch, "row " + std::to_string(i) + " has width " +
                                                std::to_string(rows[i].size()) + ", model expects " +
                                                std::to_string(model.feature_count));
        }
        double y = model.intercept;
        for (std::size_t j = 0; j < model.feature_count; ++j) {
            y += model.coefficients[j] * rows[i][j];
        }
        out.push_back(y);
    }
    return out;
}

namespace {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double decrease = 0.0;
};

class TreeBuilder {
public:
    TreeBuilder(const LagMatrix& features, const std::vector<double>& targets,
                const TreeConfig& config, std::uint64_t seed)
        : rows_(features.rows),
          targets_(targets),
          config_(config),
          width_(features.window),
          total_(static_cast<double>(features.rows.size())),
          engine_(seed) {}

    std::unique_ptr<TreeNode> build(std::vector<std::size_t> idx, std::size_t depth) {
        auto node = std::make_unique<TreeNode>();
        node->sample_count = idx.size();
        double sum = 0.0;
        for (std::size_t i : idx) sum += targets_[i];
        node->prediction = sum / static_cast<double>(idx.size());

        if (depth >= config_.max_depth || idx.size() < 2 * config_.min_samples_leaf) {
            return node;
        }
        const SplitChoice split = best_split(idx, sum);
        if (!split.found) return node;

        std::vector<std::size_t> left_idx;
        std::vector<std::size_t> right_idx;
        for (std::size_t i : idx) {
            (rows_[i][split.feature] <= split.threshold ? left_idx : right_idx).push_back(i);
        }
        node->feature_index = split.feature;
        node->threshold = split.threshold;
        node->impurity_decrease = split.decrease;
        node->left = build(std::move(left_idx), depth + 1);
        node->right = build(std::move(right_idx), depth + 1);
        return node;
    }

private:
    SplitChoice best_split(const std::vector<std::size_t>& idx, double node_sum) {
        const std::size_t count = idx.size();
        const double parent_term =
            node_sum * node_sum / static_cast<double>(count);

        std::vector<std::size_t> candidates = candidate_features();
        SplitChoice best;
        std::vector<std::pair<double, double>> col(count); // (feature value, target)
        for (std::size_t j : candidates) {
            for (std::size_t p = 0; p < count; ++p) {
                col[p] = {rows_[idx[p]][j], targets_[idx[p]]};
            }
            std::sort(col.begin(), col.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double left_sum = 0.0;
            for (std::size_t p = 1; p < count; ++p) {
                left_sum += col[p - 1].second;
                if (col[p - 1].first == col[p].first) continue;
                if (p < config_.min_samples_leaf || count - p < config_.min_samples_leaf) continue;
                double thr = (col[p - 1].first + col[p].first) / 2.0;
                if (!(thr < col[p].first)) thr = col[p - 1].first;
                const double right_sum = node_sum - left_sum;
                const double gain = left_sum * left_sum / static_cast<double>(p) +
                                    right_sum * right_sum / static_cast<double>(count - p) -
                                    parent_term;
                const double decrease = gain / total_;
                if (!best.found || decrease > best.decrease) {
                    best = {true, j, thr, decrease};
                }
            }
        }
        if (best.found &&
            !(best.decrease >= config_.min_impurity_decrease && best.decrease > 0.0)) {
            best.found = false;
        }
        return best;
    }

    std::vector<std::size_t> candidate_features() {
        std::vector<std::size_t> all(width_);
        std::iota(all.begin(), all.end(), std::size_t{0});
        if (config_.max_features == MaxFeatures::All) return all;
        const std::size_t m = std::max<std::size_t>(
            1, static_cast<std::size_t>(std::sqrt(static_cast<double>(width_))));
        if (m >= width_) return all;
        std::vector<std::size_t> subset;
        subset.reserve(m);
        std::sample(all.begin(), all.end(), std::back_inserter(subset), m, engine_);
        return subset; // std::sample keeps ascending order
    }

    const std::vector<std::vector<double>>& rows_;
    const std::vector<double>& targets_;
    const TreeConfig& config_;
    std::size_t width_;
    double total_;
    std::mt19937_64 engine_;
};

void validate_tree_config(const TreeConfig& config) {
    if (config.max_depth == 0) raise(ErrorCode::ParamOutOfRange, "max_depth must be positive");
    if (config.min_samples_leaf == 0) {
        raise(ErrorCode::ParamOutOfRange, "min_samples_leaf must be positive");
    }
    if (!(config.min_impurity_decrease >= 0.0) || !std::isfinite(config.min_impurity_decrease)) {
        raise(ErrorCode::ParamOutOfRange, "min_impurity_decrease must be a nonnegative real");
    }
}

std::size_t required_width(const TreeNode& node) {
    if (node.is_leaf()) return 0;
    return std::max({node.feature_index + 1, required_width(*node.left), required_width(*node.right)});
}

} // namespace

TreeNode tree_fit(const LagMatrix& features, const std::vector<double>& targets,
                  const TreeConfig& config, std::uint64_t seed) {
    validate_matrix(features, targets);
    validate_tree_config(config);
    const std::size_t n = features.rows.size();
    if (n < 2 * config.min_samples_leaf) {
        raise(ErrorCode::TooFewRows, "tree needs at least " +
                                         std::to_string(2 * config.min_samples_leaf) +
                                         " rows, got " + std::to_string(n));
    }
    TreeBuilder builder(features, targets, config, seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return std::move(*builder.build(std::move(idx), 0));
}

std::vector<double> predict_tree(const TreeNode& tree,
                                 const std::vector<std::vector<double>>& rows) {
    const std::size_t need = required_width(tree);
    std::vector<double> out;
    out.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() < need) {
            raise(ErrorCode::WidthMismatch, "row " + std::to_string(i) + " has width " +
                                                std::to_string(rows[i].size()) + ", tree tests feature " +
                                                std::to_string(need - 1));
        }
        const TreeNode* node = &tree;
        while (!node->is_leaf()) {
            node = rows[i][node->feature_index] <= node->threshold ? node->left.get()
                                                                   : node->right.get();
        }
        out.push_back(node->prediction);
    }
    return out;
}

GridSearchResult grid_search(const LagMatrix& features, const std::vector<double>& targets,
                             const std::vector<TreeConfig>& grid, double holdout_fraction,
                             std::uint64_t seed) {
    validate_matrix(features, targets);
    if (grid.empty()) raise(ErrorCode::EmptyInput, "config grid is empty");
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
        raise(ErrorCode::ParamOutOfRange, "holdout fraction must lie in (0,1)");
    }
    const std::size_t n = features.rows.size();
    const std::size_t train_n = train_size_for_split(n, holdout_fraction);
    if (train_n == 0 || train_n >= n) {
        raise(ErrorCode::DegenerateSplit, "holdout split leaves an empty side (train " +
                                              std::to_string(train_n) + " of " + std::to_string(n) +
                                              ")");
    }

    LagMatrix train;
    train.window = features.window;
    train.rows.assign(features.rows.begin(),
                      features.rows.begin() + static_cast<std::ptrdiff_t>(train_n));
    const std::vector<double> train_targets(targets.begin(),
                                            targets.begin() + static_cast<std::ptrdiff_t>(train_n));
    const std::vector<std::vector<double>> hold_rows(
        features.rows.begin() + static_cast<std::ptrdiff_t>(train_n), features.rows.end());
    const std::vector<double> hold_targets(targets.begin() + static_cast<std::ptrdiff_t>(train_n),
                                           targets.end());

    GridSearchResult result;
    result.trials.reserve(grid.size());
    for (const TreeConfig& config : grid) {
        const TreeNode tree = tree_fit(train, train_targets, config, seed);
        const double score = mae(hold_targets, predict_tree(tree, hold_rows));
        result.trials.emplace_back(config, score);
        if (result.trials.size() == 1 || score < result.best_score) {
            result.best_config = config;
            result.best_score = score;
        }
    }
    return result;
}

std::vector<TreeConfig> default_tree_grid() {
    std::vector<TreeConfig> grid;
    for (std::size_t depth : {5, 10, 15}) {
        for (std::size_t leaf : {5, 10}) {
            for (double decrease : {0.0, 0.5}) {
                TreeConfig config;
                config.max_depth = depth;
                config.min_samples_leaf = leaf;
                config.min_impurity_decrease = decrease;
                grid.push_back(config);
            }
        }
    }
    return grid;
}

} // namespace tsfore
