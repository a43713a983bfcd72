#include "fmp/ml/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fmp {

namespace {

double mean_label(const SupervisedDataset& data, const std::vector<std::size_t>& rows) {
    double sum = 0.0;
    for (std::size_t i : rows) sum += data.rows[i].label;
    return sum / static_cast<double>(rows.size());
}

double sse_label(const SupervisedDataset& data, const std::vector<std::size_t>& rows) {
    const double mean = mean_label(data, rows);
    double ss = 0.0;
    for (std::size_t i : rows) {
        const double d = data.rows[i].label - mean;
        ss += d * d;
    }
    return ss;
}

struct SplitCandidate {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double children_sse = std::numeric_limits<double>::infinity();
};

// Side statistics accumulate over the node's rows in dataset order, so
// candidates that induce the same partition produce the same SSE bits no
// matter which feature reaches them, and the first-seen rule below
// really is "lowest feature index, then lowest threshold".
double candidate_sse(const SupervisedDataset& data, const std::vector<std::size_t>& rows,
                     std::size_t feature, double threshold, std::size_t min_leaf) {
    std::size_t n_left = 0, n_right = 0;
    double sum_left = 0.0, sum_right = 0.0;
    for (std::size_t i : rows) {
        if (data.rows[i].features[feature] <= threshold) {
            ++n_left;
            sum_left += data.rows[i].label;
        } else {
            ++n_right;
            sum_right += data.rows[i].label;
        }
    }
    if (n_left < min_leaf || n_right < min_leaf)
        return std::numeric_limits<double>::infinity();
    const double mean_left = sum_left / static_cast<double>(n_left);
    const double mean_right = sum_right / static_cast<double>(n_right);
    double sse_left = 0.0, sse_right = 0.0;
    for (std::size_t i : rows) {
        const double y = data.rows[i].label;
        if (data.rows[i].features[feature] <= threshold) {
            sse_left += (y - mean_left) * (y - mean_left);
        } else {
            sse_right += (y - mean_right) * (y - mean_right);
        }
    }
    return sse_left + sse_right;
}

SplitCandidate best_split(const SupervisedDataset& data, const std::vector<std::size_t>& rows,
                          const TreeParams& params) {
    SplitCandidate best;
    const std::size_t min_leaf = static_cast<std::size_t>(params.minimal_leaf_size);
    const std::size_t n_features = data.feature_names.size();

    std::vector<double> values(rows.size());
    for (std::size_t f = 0; f < n_features; ++f) {
        for (std::size_t k = 0; k < rows.size(); ++k)
            values[k] = data.rows[rows[k]].features[f];
        std::sort(values.begin(), values.end());
        const auto last = std::unique(values.begin(), values.end());
        for (auto it = values.begin() + 1; it < last; ++it) {
            const double lo = *(it - 1);
            const double hi = *it;
            const double threshold = lo + (hi - lo) / 2.0;
            if (!(threshold > lo) || !(threshold < hi)) continue;  // adjacent representables
            const double sse = candidate_sse(data, rows, f, threshold, min_leaf);
            if (sse < best.children_sse) {
                best.found = true;
                best.feature = static_cast<int>(f);
                best.threshold = threshold;
                best.children_sse = sse;
            }
        }
    }
    return best;
}

std::unique_ptr<TreeNode> grow(const SupervisedDataset& data, std::vector<std::size_t> rows,
                               int depth, const TreeParams& params) {
    auto node = std::make_unique<TreeNode>();
    node->value = mean_label(data, rows);

    if (depth >= params.max_depth) return node;
    if (rows.size() < 2 * static_cast<std::size_t>(params.minimal_leaf_size)) return node;
    const double node_sse = sse_label(data, rows);
    if (node_sse <= 0.0) return node;  // pure node

    const SplitCandidate split = best_split(data, rows, params);
    if (!split.found) return node;
    if (node_sse - split.children_sse < params.minimal_gain * node_sse) return node;

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t i : rows) {
        if (data.rows[i].features[static_cast<std::size_t>(split.feature)] <= split.threshold)
            left_rows.push_back(i);
        else
            right_rows.push_back(i);
    }
    node->feature = split.feature;
    node->threshold = split.threshold;
    node->left = grow(data, std::move(left_rows), depth + 1, params);
    node->right = grow(data, std::move(right_rows), depth + 1, params);
    return node;
}

int node_depth(const TreeNode& node) {
    if (node.is_leaf()) return 0;
    return 1 + std::max(node_depth(*node.left), node_depth(*node.right));
}

}  // namespace

double TreeModel::predict(std::span<const double> features) const {
    const TreeNode* node = root.get();
    while (!node->is_leaf()) {
        node = features[static_cast<std::size_t>(node->feature)] <= node->threshold
                   ? node->left.get()
                   : node->right.get();
    }
    return node->value;
}

int TreeModel::depth() const { return root ? node_depth(*root) : 0; }

TreeModel fit_tree(const SupervisedDataset& data, const TreeParams& params) {
    if (data.empty()) throw std::invalid_argument("fit_tree: empty dataset");
    if (params.max_depth < 0) throw std::invalid_argument("fit_tree: max_depth must be >= 0");
    if (params.minimal_leaf_size < 1)
        throw std::invalid_argument("fit_tree: minimal_leaf_size must be >= 1");

    std::vector<std::size_t> rows(data.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;

    TreeModel model;
    model.params = params;
    model.feature_names = data.feature_names;
    model.root = grow(data, std::move(rows), 0, params);
    return model;
}

}  // namespace fmp
