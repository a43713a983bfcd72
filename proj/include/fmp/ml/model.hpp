#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>

#include "fmp/ml/dataset.hpp"
#include "fmp/ml/linear.hpp"
#include "fmp/ml/mlp.hpp"
#include "fmp/ml/tree.hpp"

namespace fmp {

// Common face over the base learners; fitted models are immutable in
// practice and safe to share for concurrent prediction.
class Regressor {
  public:
    virtual ~Regressor() = default;
    virtual void fit(const SupervisedDataset& data) = 0;
    virtual double predict(std::span<const double> features) const = 0;
    virtual std::string kind() const = 0;
};

using LearnerFactory = std::function<std::unique_ptr<Regressor>()>;

class TreeRegressor : public Regressor {
  public:
    TreeRegressor() = default;
    explicit TreeRegressor(TreeParams params) : params_(params) {}
    explicit TreeRegressor(TreeModel model) : params_(model.params), model_(std::move(model)) {}

    void fit(const SupervisedDataset& data) override { model_ = fit_tree(data, params_); }
    double predict(std::span<const double> features) const override {
        return model_.predict(features);
    }
    std::string kind() const override { return "tree"; }
    const TreeModel& model() const { return model_; }

  private:
    TreeParams params_;
    TreeModel model_;
};

class MlpRegressor : public Regressor {
  public:
    MlpRegressor() = default;
    explicit MlpRegressor(MlpParams params) : params_(params) {}
    explicit MlpRegressor(MlpModel model) : params_(model.params), model_(std::move(model)) {}

    void fit(const SupervisedDataset& data) override { model_ = fit_mlp(data, params_); }
    double predict(std::span<const double> features) const override {
        return model_.predict(features);
    }
    std::string kind() const override { return "mlp"; }
    const MlpModel& model() const { return model_; }

  private:
    MlpParams params_;
    MlpModel model_;
};

class RelativeRegressor : public Regressor {
  public:
    explicit RelativeRegressor(std::string reference_feature = "lag1")
        : reference_(std::move(reference_feature)) {}
    explicit RelativeRegressor(RelativeRegressionModel model) : model_(std::move(model)) {
        reference_ = model_.feature_names[static_cast<std::size_t>(model_.reference_index)];
    }

    void fit(const SupervisedDataset& data) override {
        model_ = fit_relative_regression(data, reference_);
    }
    double predict(std::span<const double> features) const override {
        return model_.predict(features);
    }
    std::string kind() const override { return "relative_regression"; }
    const RelativeRegressionModel& model() const { return model_; }

  private:
    std::string reference_;
    RelativeRegressionModel model_;
};

}  // namespace fmp
