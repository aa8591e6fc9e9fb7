#ifndef TSFORE_MODEL_JSON_HPP
#define TSFORE_MODEL_JSON_HPP

#include <string>

#include <json.hpp>

#include "tsfore/regressors.hpp"
#include "tsfore/smoothing.hpp"

namespace tsfore {

/**
 * Serialized smoothing state: parameters, final level/trend, the
 * seasonal cycle, observation count and origin date. Fitted values and
 * state paths are training artifacts and are not persisted; a restored
 * model forecasts identically but cannot be re-scored in sample.
 */
nlohmann::json holt_winters_to_json(const HoltWintersModel& model);
HoltWintersModel holt_winters_from_json(const nlohmann::json& doc);

/// Coefficients, intercept and penalty; training fitted values are not
/// persisted. A restored model predicts identically.
nlohmann::json linear_model_to_json(const LinearModel& model);
LinearModel linear_model_from_json(const nlohmann::json& doc);

/// Nested node objects: internal nodes carry feature/threshold/decrease
/// plus "left"/"right"; every node carries samples and prediction.
nlohmann::json tree_to_json(const TreeNode& tree);
TreeNode tree_from_json(const nlohmann::json& doc);

/// Human-readable dump, one node per line in preorder, indented two
/// spaces per depth. Internal:
///   depth=D feature=J threshold=T samples=N prediction=P
/// Leaf:
///   depth=D leaf samples=N prediction=P
std::string tree_to_text(const TreeNode& tree);

} // namespace tsfore

#endif // TSFORE_MODEL_JSON_HPP
