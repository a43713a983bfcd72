#include "fmp/ml/validate.hpp"

#include <cmath>
#include <stdexcept>

#include "fmp/metrics.hpp"

namespace fmp {

ValidationResult sliding_window_validate(const PriceSeries& series, const LearnerFactory& learner,
                                         const SlidingWindowParams& params) {
    if (params.train_width < 1 || params.test_width < 2 || params.step < 1 || params.horizon < 1)
        throw std::invalid_argument(
            "sliding_window_validate: widths/step/horizon out of range (test_width >= 2)");

    const SupervisedDataset examples =
        windowize(series, params.window_size, params.window_step, params.window_horizon);

    const std::size_t train_w = static_cast<std::size_t>(params.train_width);
    const std::size_t test_w = static_cast<std::size_t>(params.test_width);
    const std::size_t gap = static_cast<std::size_t>(params.horizon) - 1;
    const std::size_t fold_span = train_w + gap + test_w;
    if (examples.size() < fold_span)
        throw std::invalid_argument("sliding_window_validate: " + std::to_string(examples.size()) +
                                    " examples cannot fill one fold of " +
                                    std::to_string(fold_span));

    ValidationResult result;
    for (std::size_t start = 0; start + fold_span <= examples.size();
         start += static_cast<std::size_t>(params.step)) {
        SupervisedDataset train;
        train.feature_names = examples.feature_names;
        train.rows.assign(examples.rows.begin() + static_cast<std::ptrdiff_t>(start),
                          examples.rows.begin() + static_cast<std::ptrdiff_t>(start + train_w));

        auto model = learner();
        model->fit(train);

        const std::size_t test_begin = start + train_w + gap;
        std::vector<double> predicted, actual;
        for (std::size_t i = test_begin; i < test_begin + test_w; ++i) {
            predicted.push_back(model->predict(examples.rows[i].features));
            actual.push_back(examples.rows[i].label);
        }
        const auto [matches, comparisons] = trend_agreement(predicted, actual);

        FoldStats fold;
        fold.train_begin = start;
        fold.test_begin = test_begin;
        fold.matches = matches;
        fold.comparisons = comparisons;
        fold.accuracy = static_cast<double>(matches) / static_cast<double>(comparisons);
        result.folds.push_back(fold);
        result.total_matches += matches;
        result.total_comparisons += comparisons;
    }

    const double n = static_cast<double>(result.folds.size());
    for (const auto& fold : result.folds) result.mean_accuracy += fold.accuracy;
    result.mean_accuracy /= n;
    if (result.folds.size() > 1) {
        double ss = 0.0;
        for (const auto& fold : result.folds) {
            const double d = fold.accuracy - result.mean_accuracy;
            ss += d * d;
        }
        result.std_accuracy = std::sqrt(ss / (n - 1.0));
    }
    result.micro_average =
        static_cast<double>(result.total_matches) / static_cast<double>(result.total_comparisons);
    return result;
}

}  // namespace fmp
