#include "tsfore/model_json.hpp"

#include <memory>
#include <string>

#include "tsfore/errors.hpp"
#include "tsfore/format.hpp"

namespace tsfore {

namespace {

const nlohmann::json& need_key(const nlohmann::json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        raise(ErrorCode::MalformedRow, std::string("model document lacks '") + key + "'");
    }
    return *it;
}

} // namespace

nlohmann::json holt_winters_to_json(const HoltWintersModel& model) {
    nlohmann::json doc;
    doc["method"] = "holt_winters";
    doc["alpha"] = model.params.alpha;
    doc["beta"] = model.params.beta;
    doc["gamma"] = model.params.gamma;
    doc["period"] = model.params.period;
    doc["level"] = model.level;
    doc["trend"] = model.trend;
    doc["seasonals"] = model.seasonals;
    doc["n_obs"] = model.n_obs;
    doc["origin"] = model.origin.to_string();
    doc["step_days"] = model.step_days;
    doc["training_sse"] = model.training_sse;
    return doc;
}

HoltWintersModel holt_winters_from_json(const nlohmann::json& doc) {
    auto need = [&](const char* key) -> const nlohmann::json& { return need_key(doc, key); };
    if (need("method").get<std::string>() != "holt_winters") {
        raise(ErrorCode::MalformedRow,
              "unsupported model method '" + need("method").get<std::string>() + "'");
    }

    HoltWintersModel model;
    try {
        model.params.alpha = need("alpha").get<double>();
        model.params.beta = need("beta").get<double>();
        model.params.gamma = need("gamma").get<double>();
        model.params.period = need("period").get<std::size_t>();
        model.level = need("level").get<double>();
        model.trend = need("trend").get<double>();
        model.seasonals = need("seasonals").get<std::vector<double>>();
        model.n_obs = need("n_obs").get<std::size_t>();
        model.step_days = need("step_days").get<std::int64_t>();
        model.training_sse = need("training_sse").get<double>();
        auto origin = Date::parse(need("origin").get<std::string>());
        if (!origin) {
            raise(ErrorCode::MalformedRow,
                  "bad origin date '" + need("origin").get<std::string>() + "'");
        }
        model.origin = *origin;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedRow, std::string("model document: ") + e.what());
    }
    if (model.params.period < 2 || model.seasonals.size() != model.params.period) {
        raise(ErrorCode::MalformedRow, "seasonal cycle length disagrees with the period");
    }
    model.init_length = model.params.period;
    return model;
}

nlohmann::json linear_model_to_json(const LinearModel& model) {
    nlohmann::json doc;
    doc["method"] = model.l1_penalty > 0.0 ? "lasso" : "ols";
    doc["coefficients"] = model.coefficients;
    doc["intercept"] = model.intercept;
    doc["feature_count"] = model.feature_count;
    doc["l1_penalty"] = model.l1_penalty;
    doc["converged"] = model.converged;
    return doc;
}

LinearModel linear_model_from_json(const nlohmann::json& doc) {
    const std::string method = need_key(doc, "method").get<std::string>();
    if (method != "ols" && method != "lasso") {
        raise(ErrorCode::MalformedRow, "unsupported model method '" + method + "'");
    }
    LinearModel model;
    try {
        model.coefficients = need_key(doc, "coefficients").get<std::vector<double>>();
        model.intercept = need_key(doc, "intercept").get<double>();
        model.feature_count = need_key(doc, "feature_count").get<std::size_t>();
        model.l1_penalty = need_key(doc, "l1_penalty").get<double>();
        model.converged = need_key(doc, "converged").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedRow, std::string("model document: ") + e.what());
    }
    if (model.coefficients.size() != model.feature_count) {
        raise(ErrorCode::MalformedRow, "coefficient count disagrees with feature_count");
    }
    return model;
}

nlohmann::json tree_to_json(const TreeNode& tree) {
    nlohmann::json doc;
    doc["samples"] = tree.sample_count;
    doc["prediction"] = tree.prediction;
    if (!tree.is_leaf()) {
        doc["feature"] = tree.feature_index;
        doc["threshold"] = tree.threshold;
        doc["decrease"] = tree.impurity_decrease;
        doc["left"] = tree_to_json(*tree.left);
        doc["right"] = tree_to_json(*tree.right);
    }
    return doc;
}

TreeNode tree_from_json(const nlohmann::json& doc) {
    TreeNode node;
    try {
        node.sample_count = need_key(doc, "samples").get<std::size_t>();
        node.prediction = need_key(doc, "prediction").get<double>();
        if (doc.contains("feature")) {
            node.feature_index = need_key(doc, "feature").get<std::size_t>();
            node.threshold = need_key(doc, "threshold").get<double>();
            node.impurity_decrease = need_key(doc, "decrease").get<double>();
            node.left = std::make_unique<TreeNode>(tree_from_json(need_key(doc, "left")));
            node.right = std::make_unique<TreeNode>(tree_from_json(need_key(doc, "right")));
        }
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorCode::MalformedRow, std::string("tree document: ") + e.what());
    }
    if (node.sample_count == 0) {
        raise(ErrorCode::MalformedRow, "tree node has zero samples");
    }
    return node;
}

namespace {

void dump_node(const TreeNode& node, std::size_t depth, std::string& out) {
    out.append(2 * depth, ' ');
    out += "depth=" + std::to_string(depth);
    if (node.is_leaf()) {
        out += " leaf";
    } else {
        out += " feature=" + std::to_string(node.feature_index);
        out += " threshold=" + format_double(node.threshold);
    }
    out += " samples=" + std::to_string(node.sample_count);
    out += " prediction=" + format_double(node.prediction);
    out += '\n';
    if (!node.is_leaf()) {
        dump_node(*node.left, depth + 1, out);
        dump_node(*node.right, depth + 1, out);
    }
}

} // namespace

std::string tree_to_text(const TreeNode& tree) {
    std::string out;
    dump_node(tree, 0, out);
    return out;
}

} // namespace tsfore
