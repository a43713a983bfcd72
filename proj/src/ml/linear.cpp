#include "fmp/ml/linear.hpp"

#include <cmath>
#include <stdexcept>

namespace fmp {

std::vector<double> solve_normal_equations(const std::vector<std::vector<double>>& design,
                                           const std::vector<double>& target) {
    if (design.empty()) throw std::invalid_argument("solve_normal_equations: empty design");
    if (design.size() != target.size())
        throw std::invalid_argument("solve_normal_equations: design/target size mismatch");
    const std::size_t p = design.front().size();

    // Augmented [X'X | X'y].
    std::vector<std::vector<double>> aug(p, std::vector<double>(p + 1, 0.0));
    for (std::size_t r = 0; r < design.size(); ++r) {
        const auto& row = design[r];
        if (row.size() != p)
            throw std::invalid_argument("solve_normal_equations: ragged design matrix");
        for (std::size_t i = 0; i < p; ++i) {
            for (std::size_t j = 0; j < p; ++j) aug[i][j] += row[i] * row[j];
            aug[i][p] += row[i] * target[r];
        }
    }

    double scale = 0.0;
    for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::abs(aug[i][i]));
    const double tol = scale > 0.0 ? scale * 1e-12 : 1e-12;

    for (std::size_t k = 0; k < p; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < p; ++i)
            if (std::abs(aug[i][k]) > std::abs(aug[pivot][k])) pivot = i;
        if (std::abs(aug[pivot][k]) <= tol)
            throw std::runtime_error(
                "solve_normal_equations: rank-deficient design (column " + std::to_string(k) +
                "); drop collinear features");
        std::swap(aug[k], aug[pivot]);
        for (std::size_t i = k + 1; i < p; ++i) {
            const double factor = aug[i][k] / aug[k][k];
            for (std::size_t j = k; j <= p; ++j) aug[i][j] -= factor * aug[k][j];
        }
    }

    std::vector<double> beta(p, 0.0);
    for (std::size_t ii = p; ii-- > 0;) {
        double v = aug[ii][p];
        for (std::size_t j = ii + 1; j < p; ++j) v -= aug[ii][j] * beta[j];
        beta[ii] = v / aug[ii][ii];
    }
    return beta;
}

double RelativeRegressionModel::predict(std::span<const double> features) const {
    double delta = intercept;
    for (std::size_t i = 0; i < coefficients.size(); ++i) delta += coefficients[i] * features[i];
    return features[static_cast<std::size_t>(reference_index)] + delta;
}

RelativeRegressionModel fit_relative_regression(const SupervisedDataset& data,
                                                const std::string& reference_feature) {
    if (data.empty()) throw std::invalid_argument("fit_relative_regression: empty dataset");
    const int ref = data.feature_index(reference_feature);
    if (ref < 0)
        throw std::invalid_argument("fit_relative_regression: reference feature '" +
                                    reference_feature + "' not in dataset");

    const std::size_t p = data.feature_names.size();
    std::vector<std::vector<double>> design;
    std::vector<double> delta;
    design.reserve(data.size());
    delta.reserve(data.size());
    for (const auto& row : data.rows) {
        std::vector<double> x(p + 1);
        x[0] = 1.0;
        for (std::size_t j = 0; j < p; ++j) x[j + 1] = row.features[j];
        design.push_back(std::move(x));
        delta.push_back(row.label - row.features[static_cast<std::size_t>(ref)]);
    }
    const std::vector<double> beta = solve_normal_equations(design, delta);

    RelativeRegressionModel model;
    model.feature_names = data.feature_names;
    model.reference_index = ref;
    model.intercept = beta[0];
    model.coefficients.assign(beta.begin() + 1, beta.end());
    return model;
}

}  // namespace fmp
