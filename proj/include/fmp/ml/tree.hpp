#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fmp/ml/dataset.hpp"

namespace fmp {

struct TreeParams {
    int max_depth = 25;
    double minimal_gain = 0.15;  // fraction of the parent node's squared deviation
    int minimal_leaf_size = 2;
};

struct TreeNode {
    int feature = -1;  // -1 for leaves
    double threshold = 0.0;
    double value = 0.0;  // leaf prediction: mean label of its training rows
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
    TreeParams params;
    std::vector<std::string> feature_names;
    std::unique_ptr<TreeNode> root;

    double predict(std::span<const double> features) const;
    int depth() const;
};

// Greedy top-down least-squares growth: at each node the (feature,
// threshold) minimizing the children's total squared deviation from
// their means, thresholds at midpoints of consecutive distinct sorted
// feature values, ties broken by lowest feature index then lowest
// threshold. A split is kept only when it removes at least
// minimal_gain of the node's squared deviation and both children hold
// minimal_leaf_size rows.
TreeModel fit_tree(const SupervisedDataset& data, const TreeParams& params = {});

}  // namespace fmp
