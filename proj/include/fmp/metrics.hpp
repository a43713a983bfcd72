#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fmp/date.hpp"
#include "fmp/forecast.hpp"
#include "fmp/market_data.hpp"

namespace fmp {

// Mean and sample standard deviation of a per-example statistic.
struct Spread {
    double mean = 0.0;
    double stdev = 0.0;
};

// The performance-vector bundle. correlation is absent (not zero) when
// either sequence is constant and they are not element-wise equal.
struct MetricsVector {
    double rmse = 0.0;
    Spread absolute_error;
    Spread relative_error_pct;
    Spread squared_error;
    std::optional<double> correlation;
    std::optional<double> squared_correlation;
    std::optional<double> trend_accuracy;
};

// Errors e_i = predicted_i - actual_i. Relative error needs nonzero
// actuals. Throws on length mismatch or empty input.
MetricsVector regression_metrics(std::span<const double> predicted,
                                 std::span<const double> actual);

// Fraction of steps t >= 2 where sign(predicted_t - actual_{t-1}) matches
// sign(actual_t - actual_{t-1}); zero moves match only when both are
// zero. Needs length >= 2.
double trend_accuracy(std::span<const double> predicted, std::span<const double> actual);

// The (matches, comparisons) counts behind trend_accuracy, for pooled
// micro-averaging.
std::pair<std::size_t, std::size_t> trend_agreement(std::span<const double> predicted,
                                                    std::span<const double> actual);

// Table-3-style fixed layout, numbers at >= 9 significant digits.
std::string format_performance_vector(const MetricsVector& m);

struct DatedSeries {
    std::string name;
    std::vector<std::pair<Date, double>> points;  // ascending dates
};

struct ComparisonReport {
    std::vector<Date> dates;  // intersection, ascending
    std::vector<double> actual;
    std::vector<std::pair<std::string, std::vector<double>>> predictors;
    std::vector<std::pair<std::string, MetricsVector>> metrics;
    std::vector<Date> dropped_dates;  // present somewhere but not everywhere
};

// Inner-join of the actual closes and every predictor on date; per-
// predictor performance vector over the joined rows. Throws when the
// intersection is empty.
ComparisonReport comparison_report(const PriceSeries& actual,
                                   const std::vector<DatedSeries>& predictors);

// Convenience: prepend a forecast report (date -> predicted close) to the
// predictor list.
ComparisonReport comparison_report(const PriceSeries& actual, const PredictionReport& bsopm,
                                   const std::vector<DatedSeries>& ml_predictors,
                                   const std::string& bsopm_name = "bsopm");

DatedSeries to_dated_series(const PredictionReport& report, std::string name = "bsopm");

// header: date,actual,<predictor>...
std::string comparison_csv(const ComparisonReport& report);
nlohmann::json comparison_json(const ComparisonReport& report);
nlohmann::json metrics_json(const MetricsVector& m);

}  // namespace fmp
