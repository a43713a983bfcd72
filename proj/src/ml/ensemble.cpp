#include "fmp/ml/ensemble.hpp"

#include <stdexcept>

namespace fmp {

EnsembleRegressor::EnsembleRegressor(const EnsembleParams& params) {
    if (params.relative_members < 1)
        throw std::invalid_argument("ensemble: need at least one relative-regression member");
    members_.push_back(std::make_unique<TreeRegressor>(params.tree));
    members_.push_back(std::make_unique<MlpRegressor>(params.mlp));
    for (int i = 0; i < params.relative_members; ++i)
        members_.push_back(std::make_unique<RelativeRegressor>(params.reference_feature));
}

void EnsembleRegressor::add_member(std::unique_ptr<Regressor> member) {
    members_.push_back(std::move(member));
}

void EnsembleRegressor::fit(const SupervisedDataset& data) {
    if (members_.empty()) throw std::invalid_argument("ensemble: no members to fit");
    for (auto& member : members_) member->fit(data);
}

double EnsembleRegressor::predict(std::span<const double> features) const {
    return ensemble_predict(*this, features);
}

double ensemble_predict(const EnsembleRegressor& model, std::span<const double> features) {
    const auto& members = model.members();
    if (members.empty()) throw std::invalid_argument("ensemble_predict: no members");
    double sum = 0.0;
    for (const auto& member : members) sum += member->predict(features);
    return sum / static_cast<double>(members.size());
}

}  // namespace fmp
