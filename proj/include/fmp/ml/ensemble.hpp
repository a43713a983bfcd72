#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fmp/ml/model.hpp"

namespace fmp {

// The heterogeneous voting ensemble: decision tree, neural net and one
// or more relative-regression members. The numeric-label vote is the
// arithmetic mean of the member predictions.
struct EnsembleParams {
    TreeParams tree{.max_depth = 20};
    MlpParams mlp{};
    int relative_members = 1;
    std::string reference_feature = "lag1";
};

class EnsembleRegressor : public Regressor {
  public:
    EnsembleRegressor() = default;
    explicit EnsembleRegressor(const EnsembleParams& params);

    // Assemble an arbitrary committee (tests, custom profiles).
    void add_member(std::unique_ptr<Regressor> member);

    void fit(const SupervisedDataset& data) override;
    double predict(std::span<const double> features) const override;
    std::string kind() const override { return "ensemble"; }

    const std::vector<std::unique_ptr<Regressor>>& members() const { return members_; }

  private:
    std::vector<std::unique_ptr<Regressor>> members_;
};

// Mean of the member predictions for one feature row. Requires a fitted,
// non-empty committee.
double ensemble_predict(const EnsembleRegressor& model, std::span<const double> features);

}  // namespace fmp
