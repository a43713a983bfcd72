#include "fmp/ml/model_io.hpp"

#include <stdexcept>

#include "fmp/io.hpp"

namespace fmp {

namespace {

constexpr int kFormatVersion = 1;

nlohmann::json node_to_json(const TreeNode& node) {
    if (node.is_leaf()) return nlohmann::json{{"value", node.value}};
    return nlohmann::json{{"feature", node.feature},
                          {"threshold", node.threshold},
                          {"value", node.value},
                          {"left", node_to_json(*node.left)},
                          {"right", node_to_json(*node.right)}};
}

std::unique_ptr<TreeNode> node_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    node->value = j.at("value").get<double>();
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = node_from_json(j.at("left"));
        node->right = node_from_json(j.at("right"));
    }
    return node;
}

nlohmann::json tree_payload(const TreeModel& m) {
    return nlohmann::json{{"params",
                           {{"max_depth", m.params.max_depth},
                            {"minimal_gain", m.params.minimal_gain},
                            {"minimal_leaf_size", m.params.minimal_leaf_size}}},
                          {"feature_names", m.feature_names},
                          {"root", node_to_json(*m.root)}};
}

TreeModel tree_from_payload(const nlohmann::json& j) {
    TreeModel m;
    const auto& p = j.at("params");
    m.params.max_depth = p.at("max_depth").get<int>();
    m.params.minimal_gain = p.at("minimal_gain").get<double>();
    m.params.minimal_leaf_size = p.at("minimal_leaf_size").get<int>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.root = node_from_json(j.at("root"));
    return m;
}

nlohmann::json mlp_payload(const MlpModel& m) {
    return nlohmann::json{{"params",
                           {{"cycles", m.params.cycles},
                            {"learning_rate", m.params.learning_rate},
                            {"momentum", m.params.momentum},
                            {"seed", m.params.seed},
                            {"hidden_size", m.params.hidden_size},
                            {"shuffle", m.params.shuffle}}},
                          {"feature_names", m.feature_names},
                          {"scaling",
                           {{"mean", m.scaling.mean},
                            {"stdev", m.scaling.stdev},
                            {"label_mean", m.scaling.label_mean},
                            {"label_stdev", m.scaling.label_stdev}}},
                          {"n_inputs", m.n_inputs},
                          {"n_hidden", m.n_hidden},
                          {"w_hidden", m.w_hidden},
                          {"b_hidden", m.b_hidden},
                          {"w_out", m.w_out},
                          {"b_out", m.b_out}};
}

MlpModel mlp_from_payload(const nlohmann::json& j) {
    MlpModel m;
    const auto& p = j.at("params");
    m.params.cycles = p.at("cycles").get<int>();
    m.params.learning_rate = p.at("learning_rate").get<double>();
    m.params.momentum = p.at("momentum").get<double>();
    m.params.seed = p.at("seed").get<std::uint64_t>();
    m.params.hidden_size = p.at("hidden_size").get<int>();
    m.params.shuffle = p.at("shuffle").get<bool>();
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const auto& s = j.at("scaling");
    m.scaling.mean = s.at("mean").get<std::vector<double>>();
    m.scaling.stdev = s.at("stdev").get<std::vector<double>>();
    m.scaling.label_mean = s.at("label_mean").get<double>();
    m.scaling.label_stdev = s.at("label_stdev").get<double>();
    m.n_inputs = j.at("n_inputs").get<int>();
    m.n_hidden = j.at("n_hidden").get<int>();
    m.w_hidden = j.at("w_hidden").get<std::vector<double>>();
    m.b_hidden = j.at("b_hidden").get<std::vector<double>>();
    m.w_out = j.at("w_out").get<std::vector<double>>();
    m.b_out = j.at("b_out").get<double>();
    return m;
}

nlohmann::json relreg_payload(const RelativeRegressionModel& m) {
    return nlohmann::json{{"feature_names", m.feature_names},
                          {"reference_index", m.reference_index},
                          {"intercept", m.intercept},
                          {"coefficients", m.coefficients}};
}

RelativeRegressionModel relreg_from_payload(const nlohmann::json& j) {
    RelativeRegressionModel m;
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    m.reference_index = j.at("reference_index").get<int>();
    m.intercept = j.at("intercept").get<double>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    return m;
}

}  // namespace

nlohmann::json model_to_json(const Regressor& model) {
    nlohmann::json j{{"format", "fmp-model"}, {"version", kFormatVersion}, {"type", model.kind()}};
    if (const auto* tree = dynamic_cast<const TreeRegressor*>(&model)) {
        j["payload"] = tree_payload(tree->model());
    } else if (const auto* mlp = dynamic_cast<const MlpRegressor*>(&model)) {
        j["payload"] = mlp_payload(mlp->model());
    } else if (const auto* rel = dynamic_cast<const RelativeRegressor*>(&model)) {
        j["payload"] = relreg_payload(rel->model());
    } else if (const auto* ens = dynamic_cast<const EnsembleRegressor*>(&model)) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& member : ens->members()) members.push_back(model_to_json(*member));
        j["payload"] = nlohmann::json{{"members", std::move(members)}};
    } else {
        throw std::invalid_argument("model_to_json: unsupported model kind " + model.kind());
    }
    return j;
}

std::unique_ptr<Regressor> model_from_json(const nlohmann::json& j) {
    if (j.value("format", "") != "fmp-model")
        throw std::runtime_error("model file: missing fmp-model format marker");
    if (j.value("version", 0) != kFormatVersion)
        throw std::runtime_error("model file: unsupported version");
    const std::string type = j.at("type").get<std::string>();
    const auto& payload = j.at("payload");
    if (type == "tree") return std::make_unique<TreeRegressor>(tree_from_payload(payload));
    if (type == "mlp") return std::make_unique<MlpRegressor>(mlp_from_payload(payload));
    if (type == "relative_regression")
        return std::make_unique<RelativeRegressor>(relreg_from_payload(payload));
    if (type == "ensemble") {
        auto ens = std::make_unique<EnsembleRegressor>();
        for (const auto& member : payload.at("members")) ens->add_member(model_from_json(member));
        return ens;
    }
    throw std::runtime_error("model file: unknown type " + type);
}

std::vector<std::string> model_feature_names(const Regressor& model) {
    if (const auto* tree = dynamic_cast<const TreeRegressor*>(&model))
        return tree->model().feature_names;
    if (const auto* mlp = dynamic_cast<const MlpRegressor*>(&model))
        return mlp->model().feature_names;
    if (const auto* rel = dynamic_cast<const RelativeRegressor*>(&model))
        return rel->model().feature_names;
    if (const auto* ens = dynamic_cast<const EnsembleRegressor*>(&model))
        if (!ens->members().empty()) return model_feature_names(*ens->members().front());
    return {};
}

void save_model(const std::filesystem::path& path, const Regressor& model) {
    write_file_atomic(path, model_to_json(model).dump(2) + "\n");
}

std::unique_ptr<Regressor> load_model(const std::filesystem::path& path) {
    return model_from_json(nlohmann::json::parse(read_file(path)));
}

}  // namespace fmp
