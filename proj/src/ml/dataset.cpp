#include "fmp/ml/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace fmp {

int SupervisedDataset::feature_index(const std::string& name) const {
    for (std::size_t i = 0; i < feature_names.size(); ++i)
        if (feature_names[i] == name) return static_cast<int>(i);
    return -1;
}

SupervisedDataset windowize(const PriceSeries& series, int window_size, int step, int horizon) {
    if (window_size < 1 || step < 1 || horizon < 1)
        throw std::invalid_argument("windowize: window_size, step and horizon must be >= 1");
    const std::size_t need = static_cast<std::size_t>(window_size) + static_cast<std::size_t>(horizon);
    if (series.size() < need)
        throw std::invalid_argument("windowize: series of " + std::to_string(series.size()) +
                                    " bars is too short for window " + std::to_string(window_size) +
                                    " + horizon " + std::to_string(horizon));

    SupervisedDataset data;
    for (int k = window_size; k >= 1; --k) data.feature_names.push_back("lag" + std::to_string(k));

    for (std::size_t start = 0; start + need <= series.size();
         start += static_cast<std::size_t>(step)) {
        DataRow row;
        for (std::size_t j = 0; j < static_cast<std::size_t>(window_size); ++j)
            row.features.push_back(series.bars[start + j].close);
        const std::size_t label_i =
            start + static_cast<std::size_t>(window_size) + static_cast<std::size_t>(horizon) - 1;
        row.label = series.bars[label_i].close;
        row.id = series.bars[label_i].date;
        data.rows.push_back(std::move(row));
    }
    return data;
}

SupervisedDataset tabular_dataset(const PriceSeries& series, int lags) {
    if (lags < 1) throw std::invalid_argument("tabular_dataset: lags must be >= 1");
    if (series.size() <= static_cast<std::size_t>(lags))
        throw std::invalid_argument("tabular_dataset: series too short for " +
                                    std::to_string(lags) + " lags");

    SupervisedDataset data;
    data.feature_names = {"open", "high", "low", "volume"};
    for (int k = 1; k <= lags; ++k) data.feature_names.push_back("lag" + std::to_string(k));

    for (std::size_t i = static_cast<std::size_t>(lags); i < series.size(); ++i) {
        const PriceBar& bar = series.bars[i];
        DataRow row;
        row.id = bar.date;
        row.features = {bar.open, bar.high, bar.low, bar.volume};
        for (int k = 1; k <= lags; ++k)
            row.features.push_back(series.bars[i - static_cast<std::size_t>(k)].close);
        row.label = bar.close;
        data.rows.push_back(std::move(row));
    }
    return data;
}

std::pair<SupervisedDataset, SupervisedDataset> split_linear(const SupervisedDataset& data,
                                                             double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0))
        throw std::invalid_argument("split_linear: ratio must be in (0, 1)");
    const std::size_t n_train =
        static_cast<std::size_t>(std::floor(ratio * static_cast<double>(data.size())));
    if (n_train == 0 || n_train == data.size())
        throw std::invalid_argument("split_linear: a partition would be empty (n=" +
                                    std::to_string(data.size()) + ", ratio=" +
                                    std::to_string(ratio) + ")");
    SupervisedDataset train, test;
    train.feature_names = data.feature_names;
    test.feature_names = data.feature_names;
    train.rows.assign(data.rows.begin(), data.rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.rows.assign(data.rows.begin() + static_cast<std::ptrdiff_t>(n_train), data.rows.end());
    return {std::move(train), std::move(test)};
}

}  // namespace fmp
