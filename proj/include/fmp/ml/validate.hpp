#pragma once

#include <cstddef>
#include <vector>

#include "fmp/market_data.hpp"
#include "fmp/ml/model.hpp"

namespace fmp {

// Walk-forward series validation: the series is windowized into
// single-close examples, then a training window of train_width examples
// and an adjacent test window of test_width examples slide forward by
// step. horizon is the increment from the last training example to the
// first test example.
struct SlidingWindowParams {
    int train_width = 3;
    int step = 1;
    int test_width = 3;
    int horizon = 1;
    int window_size = 1;  // example encoding (windowize) settings
    int window_step = 1;
    int window_horizon = 1;
};

struct FoldStats {
    std::size_t train_begin = 0;  // example index of the fold's first training row
    std::size_t test_begin = 0;
    std::size_t matches = 0;
    std::size_t comparisons = 0;
    double accuracy = 0.0;
};

struct ValidationResult {
    std::vector<FoldStats> folds;
    double mean_accuracy = 0.0;   // across folds
    double std_accuracy = 0.0;    // sample standard deviation across folds
    double micro_average = 0.0;   // pooled over all test examples
    std::size_t total_matches = 0;
    std::size_t total_comparisons = 0;
};

// Fits a fresh learner per fold and scores directional agreement on the
// fold's test window. Throws when the series is too short for one fold.
ValidationResult sliding_window_validate(const PriceSeries& series, const LearnerFactory& learner,
                                         const SlidingWindowParams& params = {});

}  // namespace fmp
