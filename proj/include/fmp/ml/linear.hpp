#pragma once

#include <span>
#include <string>
#include <vector>

#include "fmp/ml/dataset.hpp"

namespace fmp {

// Solves (X'X) beta = X'y by Gaussian elimination with partial pivoting.
// X is row-major with rows of equal width. Throws on a rank-deficient
// system.
std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& design,
                                           const std::vector<double>& target);

// Least squares on the label's deviation from a reference feature:
// fits delta = label - reference over [1, features...], predicts
// reference + fitted delta. The default reference is the lagged close.
struct RelativeRegressionModel {
    std::vector<std::string> feature_names;
    int reference_index = -1;
    double intercept = 0.0;
    std::vector<double> coefficients;  // one per feature

    double predict(std::span<const double> features) const;
};

RelativeRegressionModel fit_relative_regression(const SupervisedDataset& data,
                                                const std::string& reference_feature = "lag1");

}  // namespace fmp
