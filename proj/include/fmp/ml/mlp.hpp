#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fmp/ml/dataset.hpp"

namespace fmp {

struct MlpParams {
    int cycles = 500;           // training epochs
    double learning_rate = 0.3;
    double momentum = 0.2;      // fraction of the previous weight update
    std::uint64_t seed = 1;
    int hidden_size = 0;        // 0 -> floor((feature count + 1) / 2) + 1
    bool shuffle = false;       // seeded per-epoch shuffle; off for the fixed row order
};

struct FeatureScaling {
    std::vector<double> mean;
    std::vector<double> stdev;  // zero-variance features stored as 1
    double label_mean = 0.0;
    double label_stdev = 1.0;
};

// One logistic-sigmoid hidden layer, linear output, trained on
// z-normalized features and label by per-row updates in row order with
// momentum. Predictions are de-normalized back to price units.
struct MlpModel {
    MlpParams params;
    std::vector<std::string> feature_names;
    FeatureScaling scaling;
    int n_inputs = 0;
    int n_hidden = 0;
    std::vector<double> w_hidden;  // [hidden][input], row-major
    std::vector<double> b_hidden;  // [hidden]
    std::vector<double> w_out;     // [hidden]
    double b_out = 0.0;

    double predict(std::span<const double> features) const;
};

// Initial weights uniform in [-0.5, 0.5) from the seeded generator;
// bit-deterministic given (data, params, seed). Throws on an empty
// dataset and on a non-finite loss (reporting the epoch).
MlpModel fit_mlp(const SupervisedDataset& data, const MlpParams& params = {});

// Flat parameter vector: w_hidden, b_hidden, w_out, b_out.
std::vector<double> mlp_parameters(const MlpModel& model);
void set_mlp_parameters(MlpModel& model, std::span<const double> flat);

// Sum over rows of (out - y)^2 / 2 in normalized units, and its analytic
// gradient in the flat layout.
double mlp_loss(const MlpModel& model, const SupervisedDataset& data);
std::vector<double> mlp_gradient(const MlpModel& model, const SupervisedDataset& data);

}  // namespace fmp
