#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "tsfore/errors.hpp"
#include "tsfore/lag.hpp"
#include "tsfore/metrics.hpp"
#include "tsfore/model_json.hpp"
#include "tsfore/regressors.hpp"
#include "tsfore/time_series.hpp"

#define CHECK_NEAR(a, b, tol) CHECK(std::abs((a) - (b)) <= (tol))

using tsfore::Date;
using tsfore::ErrorCode;
using tsfore::LagMatrix;
using tsfore::LinearModel;
using tsfore::TreeConfig;
using tsfore::TreeNode;

namespace {

LagMatrix matrix_from_columns(const std::vector<std::vector<double>>& columns) {
    LagMatrix m;
    m.window = columns.size();
    const std::size_t n = columns.front().size();
    m.rows.assign(n, std::vector<double>(columns.size(), 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) {
            m.rows[i][j] = columns[j][i];
        }
    }
    return m;
}

/// y = 0 for x <= 5, 10 above; the unique best root split is at 5.5.
LagMatrix step_matrix(std::vector<double>& targets_out) {
    std::vector<double> x(10);
    std::iota(x.begin(), x.end(), 1.0);
    targets_out.assign(10, 0.0);
    for (std::size_t i = 5; i < 10; ++i) targets_out[i] = 10.0;
    return matrix_from_columns({x});
}

/// Independent dense solve of A w = rhs by Gaussian elimination with
/// partial pivoting; used to cross-check the QR path via the normal
/// equations on small, well-conditioned problems.
std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> rhs) {
    const std::size_t k = rhs.size();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < k; ++c) a[r][c] -= f * a[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> w(k, 0.0);
    for (std::size_t r = k; r-- > 0;) {
        double s = rhs[r];
        for (std::size_t c = r + 1; c < k; ++c) s -= a[r][c] * w[c];
        w[r] = s / a[r][r];
    }
    return w;
}

double lasso_objective(const LagMatrix& m, const std::vector<double>& y, const LinearModel& model) {
    const std::size_t n = m.rows.size();
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = model.intercept;
        for (std::size_t j = 0; j < m.window; ++j) p += model.coefficients[j] * m.rows[i][j];
        const double d = y[i] - p;
        sse += d * d;
    }
    double l1 = 0.0;
    for (double c : model.coefficients) l1 += std::abs(c);
    return sse / (2.0 * static_cast<double>(n)) + model.l1_penalty * l1;
}

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const tsfore::Error& e) {
        return e.code();
    }
    FAIL("expected a tsfore::Error");
    return ErrorCode::MalformedRow;
}

} // namespace

TEST_CASE("ols recovers an exact line") {
    std::vector<double> x(10);
    std::iota(x.begin(), x.end(), 1.0);
    std::vector<double> y(10);
    for (std::size_t i = 0; i < 10; ++i) y[i] = 2.0 * x[i] + 1.0;
    const LagMatrix m = matrix_from_columns({x});

    const LinearModel model = tsfore::ols_fit(m, y);
    REQUIRE(model.feature_count == 1);
    CHECK_NEAR(model.coefficients[0], 2.0, 1e-10);
    CHECK_NEAR(model.intercept, 1.0, 1e-10);
    CHECK(model.l1_penalty == 0.0);
    CHECK(model.converged);
    REQUIRE(model.fitted.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK_NEAR(model.fitted[i], y[i], 1e-9);
}

TEST_CASE("ols on constant targets puts everything in the intercept") {
    std::vector<double> x(12);
    std::iota(x.begin(), x.end(), 0.0);
    const std::vector<double> y(12, 7.25);
    const LinearModel model = tsfore::ols_fit(matrix_from_columns({x}), y);
    CHECK_NEAR(model.coefficients[0], 0.0, 1e-12);
    CHECK_NEAR(model.intercept, 7.25, 1e-12);
}

TEST_CASE("ols matches a normal-equations oracle on a lag matrix") {
    std::mt19937 rng(4242);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> walk(200, 100.0);
    for (std::size_t i = 1; i < walk.size(); ++i) walk[i] = walk[i - 1] + normal(rng);
    const tsfore::TimeSeries series(Date(2019, 1, 1), 1, walk, "walk");
    const LagMatrix m = tsfore::make_lag_matrix(series, 5);
    REQUIRE(m.row_count() == 195);

    const LinearModel model = tsfore::ols_fit(m, m.targets);

    // Oracle: build the bordered design [X 1] and solve A^T A w = A^T y
    // exactly as written, with an explicit 6x6 elimination.
    const std::size_t n = m.row_count();
    const std::size_t k = 6;
    std::vector<std::vector<double>> ata(k, std::vector<double>(k, 0.0));
    std::vector<double> aty(k, 0.0);
    auto design_at = [&](std::size_t i, std::size_t j) {
        return j < 5 ? m.rows[i][j] : 1.0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            aty[a] += design_at(i, a) * m.targets[i];
            for (std::size_t b = 0; b < k; ++b) ata[a][b] += design_at(i, a) * design_at(i, b);
        }
    }
    const std::vector<double> w = gauss_solve(ata, aty);
    for (std::size_t j = 0; j < 5; ++j) CHECK_NEAR(model.coefficients[j], w[j], 1e-6);
    CHECK_NEAR(model.intercept, w[5], 1e-6);

    // residuals orthogonal to every feature column
    for (std::size_t j = 0; j < 5; ++j) {
        double dot = 0.0;
        double col_norm = 0.0;
        double res_norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = m.targets[i] - model.fitted[i];
            dot += m.rows[i][j] * r;
            col_norm += m.rows[i][j] * m.rows[i][j];
            res_norm += r * r;
        }
        CHECK(std::abs(dot) / (std::sqrt(col_norm) * std::sqrt(res_norm)) < 1e-8);
    }
}

TEST_CASE("ols rejects bad inputs") {
    std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> y = {1.0, 2.0, 3.0, 4.0};

    SUBCASE("too few rows") {
        LagMatrix wide = matrix_from_columns({x, x, x, x});
        CHECK(code_of([&] { tsfore::ols_fit(wide, y); }) == ErrorCode::TooFewRows);
    }
    SUBCASE("duplicate feature names the second column") {
        std::vector<double> z = {0.5, 1.5, 0.25, 2.0};
        LagMatrix dup = matrix_from_columns({z, x, x});
        dup.rows.push_back({3.0, 5.0, 5.0});
        dup.rows.push_back({1.0, 6.0, 6.0});
        std::vector<double> y6 = {1, 2, 3, 4, 5, 6};
        try {
            tsfore::ols_fit(dup, y6);
            FAIL("expected RankDeficient");
        } catch (const tsfore::Error& e) {
            CHECK(e.code() == ErrorCode::RankDeficient);
            CHECK(std::string(e.what()).find("column 2") != std::string::npos);
        }
    }
    SUBCASE("constant feature collides with the intercept") {
        std::vector<double> ones(6, 3.0);
        std::vector<double> z = {0.5, 1.5, 0.25, 2.0, 3.0, 1.0};
        std::vector<double> y6 = {1, 2, 3, 4, 5, 6};
        try {
            tsfore::ols_fit(matrix_from_columns({z, ones}), y6);
            FAIL("expected RankDeficient");
        } catch (const tsfore::Error& e) {
            CHECK(e.code() == ErrorCode::RankDeficient);
            CHECK(std::string(e.what()).find("intercept") != std::string::npos);
        }
    }
    SUBCASE("length mismatch") {
        LagMatrix m = matrix_from_columns({x});
        std::vector<double> y3 = {1, 2, 3};
        CHECK(code_of([&] { tsfore::ols_fit(m, y3); }) == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("predict_linear applies the affine map") {
    LinearModel flat;
    flat.coefficients = {0.0, 0.0};
    flat.intercept = 5.0;
    flat.feature_count = 2;
    const auto preds = tsfore::predict_linear(flat, {{1.0, 2.0}, {-3.0, 9.0}, {0.0, 0.0}});
    for (double p : preds) CHECK(p == 5.0);

    LinearModel line;
    line.coefficients = {2.0};
    line.intercept = 1.0;
    line.feature_count = 1;
    CHECK(tsfore::predict_linear(line, {{3.0}})[0] == 7.0);

    CHECK(code_of([&] { tsfore::predict_linear(line, {{1.0, 2.0}}); }) == ErrorCode::WidthMismatch);
}

TEST_CASE("training predictions reproduce stored fitted values") {
    std::mt19937 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(60), b(60), y(60);
    for (std::size_t i = 0; i < 60; ++i) {
        a[i] = normal(rng);
        b[i] = normal(rng);
        y[i] = 1.5 * a[i] - 0.5 * b[i] + 0.3 + 0.05 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});

    const LinearModel ols = tsfore::ols_fit(m, y);
    const auto ols_again = tsfore::predict_linear(ols, m.rows);
    for (std::size_t i = 0; i < 60; ++i) CHECK_NEAR(ols_again[i], ols.fitted[i], 1e-12);

    const LinearModel lasso = tsfore::lasso_fit(m, y, 0.05);
    const auto lasso_again = tsfore::predict_linear(lasso, m.rows);
    for (std::size_t i = 0; i < 60; ++i) CHECK_NEAR(lasso_again[i], lasso.fitted[i], 1e-12);
}

TEST_CASE("lasso with zero penalty agrees with least squares") {
    std::vector<double> x(10);
    std::iota(x.begin(), x.end(), 1.0);
    std::vector<double> y(10);
    for (std::size_t i = 0; i < 10; ++i) y[i] = 2.0 * x[i] + 1.0;
    const LagMatrix line = matrix_from_columns({x});
    const LinearModel viaCd = tsfore::lasso_fit(line, y, 0.0);
    CHECK_NEAR(viaCd.coefficients[0], 2.0, 1e-6);
    CHECK_NEAR(viaCd.intercept, 1.0, 1e-6);
    CHECK(viaCd.converged);

    std::mt19937 rng(29);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(80), b(80), c(80), t(80);
    for (std::size_t i = 0; i < 80; ++i) {
        a[i] = normal(rng);
        b[i] = 0.6 * a[i] + 0.8 * normal(rng); // correlated columns
        c[i] = normal(rng);
        t[i] = 0.9 * a[i] - 1.2 * b[i] + 0.4 * c[i] + 2.0 + 0.1 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b, c});
    const LinearModel ols = tsfore::ols_fit(m, t);
    const LinearModel cd = tsfore::lasso_fit(m, t, 0.0);
    for (std::size_t j = 0; j < 3; ++j) CHECK_NEAR(cd.coefficients[j], ols.coefficients[j], 1e-6);
    CHECK_NEAR(cd.intercept, ols.intercept, 1e-6);
}

TEST_CASE("penalties at or above lambda_max zero every coefficient") {
    std::mt19937 rng(31);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(50), b(50), y(50);
    for (std::size_t i = 0; i < 50; ++i) {
        a[i] = normal(rng);
        b[i] = normal(rng);
        y[i] = 0.7 * a[i] - 0.2 * b[i] + 5.0 + 0.3 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});
    const double lam_max = tsfore::lasso_lambda_max(m, y);
    CHECK(lam_max > 0.0);
    const double y_mean = std::accumulate(y.begin(), y.end(), 0.0) / 50.0;

    for (double lam : {lam_max, lam_max * 1.5, lam_max * 10.0}) {
        const LinearModel model = tsfore::lasso_fit(m, y, lam);
        CHECK(model.coefficients[0] == 0.0);
        CHECK(model.coefficients[1] == 0.0);
        CHECK(model.intercept == y_mean);
        CHECK(model.converged);
    }
    // just below lambda_max at least one coefficient wakes up
    const LinearModel below = tsfore::lasso_fit(m, y, lam_max * 0.99);
    CHECK((below.coefficients[0] != 0.0 || below.coefficients[1] != 0.0));
}

TEST_CASE("lasso lambda_max hand value") {
    const LagMatrix m = matrix_from_columns({{1.0, 2.0, 3.0, 4.0}});
    const std::vector<double> y = {1.0, 2.0, 3.0, 4.0};
    // mean(y)=2.5; x^T(y-mean) = -1.5 -1 +1.5 +6 = 5; /4 = 1.25
    CHECK(tsfore::lasso_lambda_max(m, y) == 1.25);
}

TEST_CASE("lasso objective matches a brute-force grid oracle") {
    std::mt19937 rng(57);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = 50;
    std::vector<double> a(n), b(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = normal(rng);
        b[i] = normal(rng);
        y[i] = 0.6 * a[i] - 0.4 * b[i] + 2.0 + 0.1 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});
    const double lambda = 0.1;
    const LinearModel model = tsfore::lasso_fit(m, y, lambda);
    const double obj_cd = lasso_objective(m, y, model);

    // Exhaustive search on a 1e-3 grid over [-1,1]^2, evaluating the full
    // objective directly (intercept = mean residual) at every point.
    const double step = 1e-3;
    double obj_grid = std::numeric_limits<double>::infinity();
    double best1 = 0.0;
    double best2 = 0.0;
    for (int i1 = -1000; i1 <= 1000; ++i1) {
        const double b1 = i1 * step;
        for (int i2 = -1000; i2 <= 1000; ++i2) {
            const double b2 = i2 * step;
            double rsum = 0.0;
            for (std::size_t i = 0; i < n; ++i) rsum += y[i] - b1 * a[i] - b2 * b[i];
            const double icpt = rsum / static_cast<double>(n);
            double sse = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double d = y[i] - b1 * a[i] - b2 * b[i] - icpt;
                sse += d * d;
            }
            const double obj = sse / (2.0 * n) + lambda * (std::abs(b1) + std::abs(b2));
            if (obj < obj_grid) {
                obj_grid = obj;
                best1 = b1;
                best2 = b2;
            }
        }
    }

    // The descent can only beat the grid by sub-resolution amounts, and the
    // grid can undercut the converged point by at most the objective's
    // variation across one cell: 2*lambda*(step/2) per coordinate plus a
    // curvature term, bounded far below 3e-4 here.
    CHECK(obj_cd <= obj_grid + 1e-9);
    CHECK(obj_grid <= obj_cd + 3e-4);
    CHECK_NEAR(model.coefficients[0], best1, 5e-3);
    CHECK_NEAR(model.coefficients[1], best2, 5e-3);
}

TEST_CASE("lasso coefficient norm shrinks as the penalty grows") {
    std::mt19937 rng(83);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 40;
        std::vector<double> a(n), b(n), c(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = normal(rng);
            b[i] = normal(rng);
            c[i] = normal(rng);
            y[i] = 1.2 * a[i] - 0.7 * b[i] + 0.3 * c[i] + 0.2 * normal(rng);
        }
        const LagMatrix m = matrix_from_columns({a, b, c});
        const double lam_max = tsfore::lasso_lambda_max(m, y);
        double l1 = unif(rng) * lam_max;
        double l2 = unif(rng) * lam_max;
        if (l1 > l2) std::swap(l1, l2);
        const LinearModel m1 = tsfore::lasso_fit(m, y, l1);
        const LinearModel m2 = tsfore::lasso_fit(m, y, l2);
        auto norm1 = [](const LinearModel& mod) {
            double s = 0.0;
            for (double coef : mod.coefficients) s += std::abs(coef);
            return s;
        };
        CHECK(norm1(m2) <= norm1(m1) + 1e-9);
    }
}

TEST_CASE("coordinate descent objective never rises across cycles") {
    std::mt19937 rng(91);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t n = 30;
        std::vector<double> a(n), b(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = normal(rng);
            b[i] = 0.7 * a[i] + 0.5 * normal(rng);
            y[i] = 0.8 * a[i] - 0.5 * b[i] + 0.15 * normal(rng);
        }
        const LagMatrix m = matrix_from_columns({a, b});
        const double lambda = 0.05;
        // Rebuilding the fit with max_iter = c yields the exact state after
        // c cycles (the algorithm is deterministic), so consecutive fits
        // expose the per-cycle objective trajectory.
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t cycles = 1; cycles <= 6; ++cycles) {
            const LinearModel it = tsfore::lasso_fit(m, y, lambda, 1e-300, cycles);
            const double obj = lasso_objective(m, y, it);
            CHECK(obj <= prev + 1e-12);
            prev = obj;
        }
    }
}

TEST_CASE("lasso flags non-convergence instead of throwing") {
    std::mt19937 rng(101);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(40), b(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        a[i] = normal(rng);
        b[i] = 0.95 * a[i] + 0.1 * normal(rng); // nearly collinear: slow descent
        y[i] = a[i] - b[i] + 0.05 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});
    const LinearModel truncated = tsfore::lasso_fit(m, y, 0.0, 1e-300, 1);
    CHECK_FALSE(truncated.converged);
    CHECK(truncated.fitted.size() == 40);
    const LinearModel full = tsfore::lasso_fit(m, y, 0.001);
    CHECK(full.converged);
}

TEST_CASE("lasso rejects bad arguments") {
    const LagMatrix m = matrix_from_columns({{1.0, 2.0, 3.0}});
    const std::vector<double> y = {1.0, 2.0, 3.0};
    CHECK(code_of([&] { tsfore::lasso_fit(m, y, -0.1); }) == ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { tsfore::lasso_fit(m, y, 0.1, 0.0); }) == ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { tsfore::lasso_fit(m, y, 0.1, 1e-8, 0); }) == ErrorCode::ParamOutOfRange);

    LagMatrix one;
    one.window = 1;
    one.rows = {{1.0}};
    const std::vector<double> y1 = {1.0};
    CHECK(code_of([&] { tsfore::lasso_fit(one, y1, 0.1); }) == ErrorCode::TooFewRows);
}

namespace {

struct WalkCheck {
    std::size_t leaves = 0;
    std::size_t deepest = 0;
};

void walk_tree(const TreeNode& node, std::size_t depth, const TreeConfig& config, WalkCheck& out) {
    REQUIRE(node.sample_count >= 1);
    out.deepest = std::max(out.deepest, depth);
    if (node.is_leaf()) {
        CHECK(node.sample_count >= config.min_samples_leaf);
        ++out.leaves;
        return;
    }
    REQUIRE(node.right != nullptr);
    CHECK(depth < config.max_depth);
    CHECK(node.impurity_decrease >= config.min_impurity_decrease);
    CHECK(node.impurity_decrease > 0.0);
    CHECK(node.left->sample_count + node.right->sample_count == node.sample_count);
    const double weighted = node.left->prediction * static_cast<double>(node.left->sample_count) +
                            node.right->prediction * static_cast<double>(node.right->sample_count);
    const double own = node.prediction * static_cast<double>(node.sample_count);
    CHECK_NEAR(weighted, own, 1e-9 * (1.0 + std::abs(own)));
    walk_tree(*node.left, depth + 1, config, out);
    walk_tree(*node.right, depth + 1, config, out);
}

} // namespace

TEST_CASE("tree on constant targets is a single leaf") {
    std::vector<double> x(30);
    std::iota(x.begin(), x.end(), 0.0);
    const std::vector<double> y(30, 4.5);
    const TreeNode tree = tsfore::tree_fit(matrix_from_columns({x}), y);
    CHECK(tree.is_leaf());
    CHECK(tree.prediction == 4.5);
    CHECK(tree.sample_count == 30);
}

TEST_CASE("tree splits step data at the midpoint") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    TreeConfig config;
    config.min_samples_leaf = 1;
    config.min_impurity_decrease = 0.0;
    const TreeNode tree = tsfore::tree_fit(m, y, config);

    REQUIRE_FALSE(tree.is_leaf());
    CHECK(tree.feature_index == 0);
    CHECK(tree.threshold == 5.5);
    CHECK_NEAR(tree.impurity_decrease, 25.0, 1e-12);
    REQUIRE(tree.left->is_leaf());
    REQUIRE(tree.right->is_leaf());
    CHECK(tree.left->prediction == 0.0);
    CHECK(tree.right->prediction == 10.0);
    CHECK(tree.left->sample_count == 5);
    CHECK(tree.right->sample_count == 5);

    const auto preds = tsfore::predict_tree(tree, {{3.0}, {8.0}, {5.5}, {5.6}});
    CHECK(preds[0] == 0.0);
    CHECK(preds[1] == 10.0);
    CHECK(preds[2] == 0.0);  // boundary routes left
    CHECK(preds[3] == 10.0);
}

TEST_CASE("root split matches exhaustive enumeration on 30 points") {
    std::mt19937 rng(123);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = 30;
    std::vector<double> a(n), b(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = normal(rng) * 3.0;
        b[i] = normal(rng) * 3.0;
        y[i] = (a[i] > 0.5 ? 4.0 : -1.0) + 0.8 * b[i] + 0.3 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});
    TreeConfig config;
    config.max_depth = 1;
    config.min_samples_leaf = 1;
    config.min_impurity_decrease = 0.0;
    const TreeNode tree = tsfore::tree_fit(m, y, config);
    REQUIRE_FALSE(tree.is_leaf());

    // Brute-force oracle: every midpoint on both features, decreases from
    // two-pass population variances.
    auto variance = [](const std::vector<double>& v) {
        double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        double ss = 0.0;
        for (double t : v) ss += (t - mean) * (t - mean);
        return ss / static_cast<double>(v.size());
    };
    const double parent = variance(y) * static_cast<double>(n);
    bool found = false;
    std::size_t best_feature = 0;
    double best_threshold = 0.0;
    double best_decrease = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
        const std::vector<double>& col = j == 0 ? a : b;
        std::vector<double> sorted = col;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t p = 1; p < sorted.size(); ++p) {
            const double thr = (sorted[p - 1] + sorted[p]) / 2.0;
            std::vector<double> left, right;
            for (std::size_t i = 0; i < n; ++i) (col[i] <= thr ? left : right).push_back(y[i]);
            if (left.empty() || right.empty()) continue;
            const double decrease = (parent - variance(left) * static_cast<double>(left.size()) -
                                     variance(right) * static_cast<double>(right.size())) /
                                    static_cast<double>(n);
            if (!found || decrease > best_decrease) {
                found = true;
                best_feature = j;
                best_threshold = thr;
                best_decrease = decrease;
            }
        }
    }
    REQUIRE(found);
    CHECK(tree.feature_index == best_feature);
    CHECK(tree.threshold == best_threshold);
    CHECK_NEAR(tree.impurity_decrease, best_decrease, 1e-9 * (1.0 + std::abs(best_decrease)));
}

TEST_CASE("structural invariants hold on 100 random trees") {
    std::mt19937 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 40 + rng() % 160;
        const std::size_t k = 1 + rng() % 5;
        std::vector<std::vector<double>> cols(k, std::vector<double>(n));
        const bool quantize = rep % 2 == 0;
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                double v = 10.0 * unif(rng);
                if (quantize) v = std::floor(v); // repeated values exercise the unique-value scan
                cols[j][i] = v;
            }
        }
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = cols[0][i] * 1.5 + (k > 1 ? cols[1][i] * -0.8 : 0.0) + normal(rng);
        }
        TreeConfig config;
        config.max_depth = 1 + rng() % 8;
        config.min_samples_leaf = 1 + rng() % 10;
        config.min_impurity_decrease = rep % 3 == 0 ? 0.0 : 0.05 * unif(rng);
        config.max_features = rep % 4 == 0 ? tsfore::MaxFeatures::Sqrt : tsfore::MaxFeatures::All;
        const LagMatrix m = matrix_from_columns(cols);
        const TreeNode tree = tsfore::tree_fit(m, y, config, 1000 + rep);

        CHECK(tree.sample_count == n);
        WalkCheck walk;
        walk_tree(tree, 0, config, walk);
        CHECK(walk.deepest <= config.max_depth);

        // piecewise constant: no more distinct predictions than leaves
        const auto preds = tsfore::predict_tree(tree, m.rows);
        const std::set<double> distinct(preds.begin(), preds.end());
        CHECK(distinct.size() <= walk.leaves);

        // fitting can only improve on the global-mean predictor
        const double mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
        CHECK(tsfore::mse(y, preds) <= tsfore::mse(y, std::vector<double>(n, mean)) + 1e-12);
    }
}

TEST_CASE("tree fitting is deterministic for a fixed seed") {
    std::mt19937 rng(55);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const std::size_t n = 120;
    const std::size_t k = 9;
    std::vector<std::vector<double>> cols(k, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) cols[j][i] = unif(rng);
        y[i] = 3.0 * cols[2][i] - 2.0 * cols[5][i] + 0.2 * unif(rng);
    }
    const LagMatrix m = matrix_from_columns(cols);
    TreeConfig config;
    config.min_samples_leaf = 5;
    config.min_impurity_decrease = 0.0;
    config.max_features = tsfore::MaxFeatures::Sqrt;

    const TreeNode t1 = tsfore::tree_fit(m, y, config, 424242);
    const TreeNode t2 = tsfore::tree_fit(m, y, config, 424242);
    CHECK(tsfore::tree_to_text(t1) == tsfore::tree_to_text(t2));
    REQUIRE_FALSE(t1.is_leaf());

    const TreeNode all = tsfore::tree_fit(m, y, TreeConfig{.max_depth = 15,
                                                           .min_samples_leaf = 5,
                                                           .min_impurity_decrease = 0.0},
                                          1);
    const TreeNode all2 = tsfore::tree_fit(m, y, TreeConfig{.max_depth = 15,
                                                            .min_samples_leaf = 5,
                                                            .min_impurity_decrease = 0.0},
                                           2);
    // max_features=all ignores the seed entirely
    CHECK(tsfore::tree_to_text(all) == tsfore::tree_to_text(all2));
}

TEST_CASE("tree rejects bad inputs") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    TreeConfig config;
    config.min_samples_leaf = 6; // needs 12 rows, only 10 present
    CHECK(code_of([&] { tsfore::tree_fit(m, y, config); }) == ErrorCode::TooFewRows);

    TreeConfig zero_depth;
    zero_depth.max_depth = 0;
    CHECK(code_of([&] { tsfore::tree_fit(m, y, zero_depth); }) == ErrorCode::ParamOutOfRange);

    TreeConfig bad_decrease;
    bad_decrease.min_impurity_decrease = -1.0;
    CHECK(code_of([&] { tsfore::tree_fit(m, y, bad_decrease); }) == ErrorCode::ParamOutOfRange);

    TreeConfig fine;
    fine.min_samples_leaf = 1;
    fine.min_impurity_decrease = 0.0;
    const TreeNode tree = tsfore::tree_fit(m, y, fine);
    CHECK(code_of([&] { tsfore::predict_tree(tree, {{}}); }) == ErrorCode::WidthMismatch);
}

TEST_CASE("grid search scores a single config by holdout MAE") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    TreeConfig config;
    config.min_samples_leaf = 1;
    config.min_impurity_decrease = 0.0;
    const auto result = tsfore::grid_search(m, y, {config}, 0.3, 9);
    REQUIRE(result.trials.size() == 1);
    CHECK(result.best_config == config);
    CHECK(result.best_score == result.trials[0].second);

    // recompute the trial by hand: fit on the first 7 rows, score the last 3
    LagMatrix train;
    train.window = 1;
    train.rows.assign(m.rows.begin(), m.rows.begin() + 7);
    const std::vector<double> train_y(y.begin(), y.begin() + 7);
    const TreeNode tree = tsfore::tree_fit(train, train_y, config, 9);
    const std::vector<std::vector<double>> hold(m.rows.begin() + 7, m.rows.end());
    const std::vector<double> hold_y(y.begin() + 7, y.end());
    CHECK(result.best_score == tsfore::mae(hold_y, tsfore::predict_tree(tree, hold)));
}

TEST_CASE("grid search prefers earlier configs on ties and recomputes scores") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    // A and B grow the identical stump on this data (equal scores); C's
    // leaf floor forces the weaker 4.5 split.
    TreeConfig a{.max_depth = 1, .min_samples_leaf = 1, .min_impurity_decrease = 0.0};
    TreeConfig b{.max_depth = 3, .min_samples_leaf = 1, .min_impurity_decrease = 0.0};
    TreeConfig c{.max_depth = 1, .min_samples_leaf = 3, .min_impurity_decrease = 0.0};

    const auto result = tsfore::grid_search(m, y, {a, b, c}, 0.3, 0);
    REQUIRE(result.trials.size() == 3);
    CHECK(result.trials[0].first == a);
    CHECK(result.trials[1].first == b);
    CHECK(result.trials[2].first == c);
    CHECK(result.trials[0].second == 0.0);
    CHECK(result.trials[1].second == 0.0);
    // train rows 1..7: split at 4.5 leaves {0,10,10} on the right, so the
    // holdout (all 10s) sees 20/3 -> MAE 10/3
    CHECK_NEAR(result.trials[2].second, 10.0 / 3.0, 1e-12);
    CHECK(result.best_config == a); // tie with b broken by grid order
    CHECK(result.best_score == 0.0);

    // duplicate configs: first occurrence wins
    const auto dup = tsfore::grid_search(m, y, {b, b, a}, 0.3, 0);
    CHECK(dup.best_config == b);
}

TEST_CASE("grid search rejects degenerate setups") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    CHECK(code_of([&] { tsfore::grid_search(m, y, {}, 0.3, 0); }) == ErrorCode::EmptyInput);
    CHECK(code_of([&] { tsfore::grid_search(m, y, {TreeConfig{}}, 0.0, 0); }) ==
          ErrorCode::ParamOutOfRange);
    CHECK(code_of([&] { tsfore::grid_search(m, y, {TreeConfig{}}, 1.0, 0); }) ==
          ErrorCode::ParamOutOfRange);

    LagMatrix tiny;
    tiny.window = 1;
    tiny.rows = {{1.0}, {2.0}, {3.0}};
    const std::vector<double> ty = {1.0, 2.0, 3.0};
    // ceil(3 * 0.9) == 3 leaves an empty holdout
    CHECK(code_of([&] { tsfore::grid_search(tiny, ty, {TreeConfig{}}, 0.1, 0); }) ==
          ErrorCode::DegenerateSplit);
}

TEST_CASE("default grid covers the shipped defaults") {
    const auto grid = tsfore::default_tree_grid();
    CHECK_FALSE(grid.empty());
    CHECK(std::find(grid.begin(), grid.end(), TreeConfig{}) != grid.end());
}

TEST_CASE("linear model JSON round trip") {
    std::mt19937 rng(67);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> a(40), b(40), y(40);
    for (std::size_t i = 0; i < 40; ++i) {
        a[i] = normal(rng);
        b[i] = normal(rng);
        y[i] = 0.4 * a[i] + 1.1 * b[i] - 3.0 + 0.1 * normal(rng);
    }
    const LagMatrix m = matrix_from_columns({a, b});
    const LinearModel model = tsfore::lasso_fit(m, y, 0.02);

    const auto doc = tsfore::linear_model_to_json(model);
    CHECK(doc["method"] == "lasso");
    const LinearModel back = tsfore::linear_model_from_json(doc);
    CHECK(back.coefficients == model.coefficients);
    CHECK(back.intercept == model.intercept);
    CHECK(back.feature_count == model.feature_count);
    CHECK(back.l1_penalty == model.l1_penalty);
    CHECK(back.converged == model.converged);
    CHECK(tsfore::predict_linear(back, m.rows) == tsfore::predict_linear(model, m.rows));

    const auto ols_doc = tsfore::linear_model_to_json(tsfore::ols_fit(m, y));
    CHECK(ols_doc["method"] == "ols");

    auto broken = doc;
    broken.erase("intercept");
    CHECK(code_of([&] { tsfore::linear_model_from_json(broken); }) == ErrorCode::MalformedRow);
    auto wrong = doc;
    wrong["method"] = "theta";
    CHECK(code_of([&] { tsfore::linear_model_from_json(wrong); }) == ErrorCode::MalformedRow);
    auto short_coefs = doc;
    short_coefs["coefficients"] = std::vector<double>{1.0};
    CHECK(code_of([&] { tsfore::linear_model_from_json(short_coefs); }) == ErrorCode::MalformedRow);
}

TEST_CASE("tree text dump and JSON round trip") {
    std::vector<double> y;
    const LagMatrix m = step_matrix(y);
    TreeConfig config;
    config.min_samples_leaf = 1;
    config.min_impurity_decrease = 0.0;
    const TreeNode tree = tsfore::tree_fit(m, y, config);

    const std::string expected = "depth=0 feature=0 threshold=5.5 samples=10 prediction=5\n"
                                 "  depth=1 leaf samples=5 prediction=0\n"
                                 "  depth=1 leaf samples=5 prediction=10\n";
    CHECK(tsfore::tree_to_text(tree) == expected);

    const auto doc = tsfore::tree_to_json(tree);
    const TreeNode back = tsfore::tree_from_json(doc);
    CHECK(tsfore::tree_to_text(back) == expected);
    CHECK(back.impurity_decrease == tree.impurity_decrease);
    const auto preds = tsfore::predict_tree(back, m.rows);
    CHECK(preds == tsfore::predict_tree(tree, m.rows));

    auto broken = doc;
    broken.erase("prediction");
    CHECK(code_of([&] { tsfore::tree_from_json(broken); }) == ErrorCode::MalformedRow);
    auto half = doc;
    half.erase("right");
    CHECK(code_of([&] { tsfore::tree_from_json(half); }) == ErrorCode::MalformedRow);
}
