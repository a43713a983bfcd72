#include <doctest.h>

#include <random>

#include "fmp/ml/model_io.hpp"
#include "helpers.hpp"

using namespace fmp;

namespace {

SupervisedDataset training_rows(std::mt19937_64& rng, int n) {
    SupervisedDataset data;
    data.feature_names = {"open", "high", "low", "volume", "lag1"};
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int i = 0; i < n; ++i) {
        const double c = 100.0 + uniform() * 30.0;
        data.rows.push_back(DataRow{Date{2016, 1, 1},
                                    {c - uniform(), c + uniform(), c - 2.0 * uniform(),
                                     500.0 + uniform() * 100.0, c - 0.5 * uniform()},
                                    c + uniform()});
    }
    return data;
}

void check_roundtrip(const Regressor& model, const SupervisedDataset& probe) {
    const auto path = std::filesystem::temp_directory_path() /
                      ("fmp_model_" + model.kind() + ".json");
    save_model(path, model);
    const auto loaded = load_model(path);
    CHECK(loaded->kind() == model.kind());
    for (const auto& row : probe.rows)
        CHECK(loaded->predict(row.features) == model.predict(row.features));  // bit-identical
    std::filesystem::remove(path);
}

}  // namespace

TEST_CASE("every model kind re-predicts bit-identically after save/load") {
    std::mt19937_64 rng(2024);
    const auto train = training_rows(rng, 40);
    const auto probe = training_rows(rng, 20);

    TreeRegressor tree(TreeParams{.max_depth = 6, .minimal_gain = 0.01});
    tree.fit(train);
    check_roundtrip(tree, probe);

    MlpRegressor mlp(MlpParams{.cycles = 40, .seed = 7});
    mlp.fit(train);
    check_roundtrip(mlp, probe);

    RelativeRegressor rel("lag1");
    rel.fit(train);
    check_roundtrip(rel, probe);

    EnsembleParams ep;
    ep.mlp.cycles = 15;
    ep.mlp.seed = 9;
    EnsembleRegressor committee(ep);
    committee.fit(train);
    check_roundtrip(committee, probe);
}

TEST_CASE("model files carry a format marker and version") {
    std::mt19937_64 rng(2025);
    const auto train = training_rows(rng, 12);
    TreeRegressor tree{TreeParams{.max_depth = 2}};
    tree.fit(train);
    const auto j = model_to_json(tree);
    CHECK(j.at("format") == "fmp-model");
    CHECK(j.at("version") == 1);
    CHECK(j.at("type") == "tree");

    nlohmann::json bad = j;
    bad["format"] = "something-else";
    CHECK_THROWS_AS(model_from_json(bad), std::runtime_error);
    bad = j;
    bad["version"] = 99;
    CHECK_THROWS_AS(model_from_json(bad), std::runtime_error);
    bad = j;
    bad["type"] = "unknown";
    CHECK_THROWS_AS(model_from_json(bad), std::runtime_error);
}

TEST_CASE("feature names survive the round trip for compatibility checks") {
    std::mt19937_64 rng(2026);
    const auto train = training_rows(rng, 12);
    MlpRegressor mlp(MlpParams{.cycles = 5, .seed = 3});
    mlp.fit(train);
    const auto path = std::filesystem::temp_directory_path() / "fmp_model_names.json";
    save_model(path, mlp);
    const auto loaded = load_model(path);
    CHECK(model_feature_names(*loaded) == train.feature_names);
    std::filesystem::remove(path);
}
