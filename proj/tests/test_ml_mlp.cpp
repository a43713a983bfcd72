#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fmp/ml/mlp.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace fmp;

namespace {

SupervisedDataset line_dataset(int n) {
    SupervisedDataset data;
    data.feature_names = {"x"};
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / (n - 1);
        data.rows.push_back(DataRow{Date{2016, 1, 1}, {x}, x});
    }
    return data;
}

SupervisedDataset random_dataset(std::mt19937_64& rng, std::size_t n, std::size_t nf) {
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    SupervisedDataset data;
    for (std::size_t f = 0; f < nf; ++f) data.feature_names.push_back("f" + std::to_string(f));
    for (std::size_t i = 0; i < n; ++i) {
        DataRow row;
        row.id = Date{2016, 1, 1};
        for (std::size_t f = 0; f < nf; ++f) row.features.push_back(uniform() * 10.0);
        row.label = uniform() * 5.0;
        data.rows.push_back(std::move(row));
    }
    return data;
}

}  // namespace

TEST_CASE("zero cycles leaves the seeded initial weights; equal seeds agree bit-for-bit") {
    std::mt19937_64 rng(15);
    const auto data = random_dataset(rng, 8, 3);
    MlpParams params;
    params.cycles = 0;
    params.seed = 1234;
    const auto a = fit_mlp(data, params);
    const auto b = fit_mlp(data, params);
    for (const auto& row : data.rows)
        CHECK(a.predict(row.features) == b.predict(row.features));

    params.seed = 1235;
    const auto c = fit_mlp(data, params);
    bool any_different = false;
    for (const auto& row : data.rows)
        any_different = any_different || a.predict(row.features) != c.predict(row.features);
    CHECK(any_different);
}

TEST_CASE("the default hidden size follows the half-plus-one rule") {
    std::mt19937_64 rng(16);
    const auto data = random_dataset(rng, 6, 5);
    const auto model = fit_mlp(data, MlpParams{.cycles = 0});
    CHECK(model.n_hidden == (5 + 1) / 2 + 1);

    const auto data1 = random_dataset(rng, 6, 1);
    CHECK(fit_mlp(data1, MlpParams{.cycles = 0}).n_hidden == 2);
}

TEST_CASE("500 cycles fit a straight line to under 0.05 normalized RMSE") {
    const auto data = line_dataset(20);
    const auto model = fit_mlp(data, MlpParams{.seed = 2});

    // The least-squares line through y=x is exact, so the net's residual
    // is pure approximation error.
    double sse = 0.0;
    for (const auto& row : data.rows) {
        const double e = (model.predict(row.features) - row.label) / model.scaling.label_stdev;
        sse += e * e;
    }
    const double rmse = std::sqrt(sse / static_cast<double>(data.size()));
    CHECK(rmse < 0.05);
}

TEST_CASE("analytic gradients agree with central finite differences") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const auto data = random_dataset(rng, 3, 2 + trial % 3);
        MlpParams params;
        params.cycles = 0;
        params.seed = 1000 + static_cast<std::uint64_t>(trial);
        const auto model = fit_mlp(data, params);
        CHECK(fmptest::max_rel_gradient_error(model, data) < 1e-4);
    }
}

TEST_CASE("gradients also agree after some training") {
    std::mt19937_64 rng(78);
    const auto data = random_dataset(rng, 6, 3);
    MlpParams params;
    params.cycles = 50;
    params.seed = 5;
    const auto model = fit_mlp(data, params);
    CHECK(fmptest::max_rel_gradient_error(model, data) < 1e-4);
}

TEST_CASE("an exploding run reports the epoch") {
    std::mt19937_64 rng(79);
    const auto data = random_dataset(rng, 8, 2);
    MlpParams params;
    params.learning_rate = 1e200;
    params.cycles = 3;
    CHECK_THROWS_WITH_AS(fit_mlp(data, params), doctest::Contains("epoch"), std::runtime_error);
}

TEST_CASE("empty dataset and shuffle determinism") {
    SupervisedDataset empty;
    empty.feature_names = {"x"};
    CHECK_THROWS_AS(fit_mlp(empty), std::invalid_argument);

    std::mt19937_64 rng(80);
    const auto data = random_dataset(rng, 10, 2);
    MlpParams params;
    params.cycles = 20;
    params.shuffle = true;
    params.seed = 99;
    const auto a = fit_mlp(data, params);
    const auto b = fit_mlp(data, params);
    for (const auto& row : data.rows)
        CHECK(a.predict(row.features) == b.predict(row.features));
}
