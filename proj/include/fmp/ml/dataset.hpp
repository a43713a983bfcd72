#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fmp/market_data.hpp"

namespace fmp {

struct DataRow {
    Date id;
    std::vector<double> features;
    double label = 0.0;
};

// Rows all share feature_names; no missing values by construction.
struct SupervisedDataset {
    std::vector<std::string> feature_names;
    std::vector<DataRow> rows;

    bool empty() const { return rows.empty(); }
    std::size_t size() const { return rows.size(); }
    int feature_index(const std::string& name) const;  // -1 when absent
};

// Close-only windowing: each row's features are the closes of window_size
// consecutive days (oldest first, named lag<window_size>..lag1), the
// label is the close horizon days after the window's last day, and
// windows advance by step. Row id is the label's date.
SupervisedDataset windowize(const PriceSeries& series, int window_size = 1, int step = 1,
                            int horizon = 1);

// Per-day attribute rows: open, high, low, volume plus lagged closes
// (lag1..lag<lags>); label is the same day's close. The first `lags` days
// carry no complete lag vector and are skipped.
SupervisedDataset tabular_dataset(const PriceSeries& series, int lags = 1);

// First floor(ratio * n) rows train, remainder test, in temporal order
// (linear, non-shuffled sampling). Throws if either side is empty.
std::pair<SupervisedDataset, SupervisedDataset> split_linear(const SupervisedDataset& data,
                                                             double ratio);

}  // namespace fmp
