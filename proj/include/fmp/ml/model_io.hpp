#pragma once

#include <filesystem>
#include <memory>

#include <json.hpp>

#include "fmp/ml/ensemble.hpp"
#include "fmp/ml/model.hpp"

namespace fmp {

// Versioned model files carrying params, seed, normalization statistics
// and the full weights/tree, enough for bit-identical re-prediction.
nlohmann::json model_to_json(const Regressor& model);
std::unique_ptr<Regressor> model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const Regressor& model);
std::unique_ptr<Regressor> load_model(const std::filesystem::path& path);

// Feature names the model was fitted on (empty when unknown), for
// model/dataset compatibility checks.
std::vector<std::string> model_feature_names(const Regressor& model);

}  // namespace fmp
