#include "fmp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "fmp/io.hpp"

namespace fmp {

namespace {

Spread spread_of(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double stdev = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    return Spread{mean, stdev};
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

MetricsVector regression_metrics(std::span<const double> predicted,
                                 std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("regression_metrics: length mismatch: " +
                                    std::to_string(predicted.size()) + " vs " +
                                    std::to_string(actual.size()));
    if (predicted.empty()) throw std::invalid_argument("regression_metrics: empty sequences");

    const std::size_t n = predicted.size();
    std::vector<double> abs_err(n), rel_err(n), sq_err(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (actual[i] == 0.0)
            throw std::invalid_argument("regression_metrics: zero actual at index " +
                                        std::to_string(i) + " with relative error requested");
        const double e = predicted[i] - actual[i];
        abs_err[i] = std::abs(e);
        rel_err[i] = std::abs(e) / std::abs(actual[i]) * 100.0;
        sq_err[i] = e * e;
    }

    MetricsVector m;
    m.absolute_error = spread_of(abs_err);
    m.relative_error_pct = spread_of(rel_err);
    m.squared_error = spread_of(sq_err);
    m.rmse = std::sqrt(m.squared_error.mean);

    // Pearson correlation; constant sequences have no defined value
    // unless both sides agree element-wise.
    double mp = 0.0, ma = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mp += predicted[i];
        ma += actual[i];
    }
    mp /= static_cast<double>(n);
    ma /= static_cast<double>(n);
    double spp = 0.0, saa = 0.0, spa = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        spp += (predicted[i] - mp) * (predicted[i] - mp);
        saa += (actual[i] - ma) * (actual[i] - ma);
        spa += (predicted[i] - mp) * (actual[i] - ma);
    }
    if (spp == 0.0 || saa == 0.0) {
        if (std::equal(predicted.begin(), predicted.end(), actual.begin())) {
            m.correlation = 1.0;
            m.squared_correlation = 1.0;
        }
    } else {
        const double r = spa / std::sqrt(spp * saa);
        m.correlation = r;
        m.squared_correlation = r * r;
    }
    return m;
}

std::pair<std::size_t, std::size_t> trend_agreement(std::span<const double> predicted,
                                                    std::span<const double> actual) {
    if (predicted.size() != actual.size())
        throw std::invalid_argument("trend_accuracy: length mismatch");
    if (predicted.size() < 2) throw std::invalid_argument("trend_accuracy: need length >= 2");
    std::size_t matches = 0;
    for (std::size_t t = 1; t < predicted.size(); ++t) {
        if (sign_of(predicted[t] - actual[t - 1]) == sign_of(actual[t] - actual[t - 1])) ++matches;
    }
    return {matches, predicted.size() - 1};
}

double trend_accuracy(std::span<const double> predicted, std::span<const double> actual) {
    const auto [matches, comparisons] = trend_agreement(predicted, actual);
    return static_cast<double>(matches) / static_cast<double>(comparisons);
}

std::string format_performance_vector(const MetricsVector& m) {
    auto num = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.9g", v);
        return std::string(buf);
    };
    std::string out;
    out += "Root mean squared error: " + num(m.rmse) + " +/- 0.000\n";
    out += "Absolute error: " + num(m.absolute_error.mean) + " +/- " +
           num(m.absolute_error.stdev) + "\n";
    out += "Relative error: " + num(m.relative_error_pct.mean) + "% +/- " +
           num(m.relative_error_pct.stdev) + "%\n";
    out += "Squared error: " + num(m.squared_error.mean) + " +/- " + num(m.squared_error.stdev) +
           "\n";
    out += "Correlation: " + (m.correlation ? num(*m.correlation) : std::string("undefined")) +
           "\n";
    out += "Squared correlation: " +
           (m.squared_correlation ? num(*m.squared_correlation) : std::string("undefined")) + "\n";
    if (m.trend_accuracy) out += "Prediction trend accuracy: " + num(*m.trend_accuracy) + "\n";
    return out;
}

DatedSeries to_dated_series(const PredictionReport& report, std::string name) {
    DatedSeries out;
    out.name = std::move(name);
    for (const auto& row : report.rows) out.points.emplace_back(row.target_date, row.predicted_close);
    return out;
}

ComparisonReport comparison_report(const PriceSeries& actual,
                                   const std::vector<DatedSeries>& predictors) {
    if (predictors.empty()) throw std::invalid_argument("comparison_report: no predictors");

    std::map<Date, double> actual_by_date;
    for (const auto& bar : actual.bars) actual_by_date[bar.date] = bar.close;

    std::vector<std::map<Date, double>> pred_by_date;
    for (const auto& p : predictors) {
        std::map<Date, double> m;
        for (const auto& [d, v] : p.points) m[d] = v;
        pred_by_date.push_back(std::move(m));
    }

    std::set<Date> all_dates;
    for (const auto& [d, v] : actual_by_date) all_dates.insert(d);
    for (const auto& m : pred_by_date)
        for (const auto& [d, v] : m) all_dates.insert(d);

    ComparisonReport report;
    for (const auto& d : all_dates) {
        bool everywhere = actual_by_date.count(d) > 0;
        for (const auto& m : pred_by_date) everywhere = everywhere && m.count(d) > 0;
        if (everywhere)
            report.dates.push_back(d);
        else
            report.dropped_dates.push_back(d);
    }
    if (report.dates.empty())
        throw std::invalid_argument("comparison_report: empty intersection of dates");

    for (const auto& d : report.dates) report.actual.push_back(actual_by_date.at(d));
    for (std::size_t i = 0; i < predictors.size(); ++i) {
        std::vector<double> values;
        for (const auto& d : report.dates) values.push_back(pred_by_date[i].at(d));
        report.predictors.emplace_back(predictors[i].name, std::move(values));
    }

    for (const auto& [name, values] : report.predictors) {
        MetricsVector m = regression_metrics(values, report.actual);
        if (values.size() >= 2) m.trend_accuracy = trend_accuracy(values, report.actual);
        report.metrics.emplace_back(name, m);
    }
    return report;
}

ComparisonReport comparison_report(const PriceSeries& actual, const PredictionReport& bsopm,
                                   const std::vector<DatedSeries>& ml_predictors,
                                   const std::string& bsopm_name) {
    std::vector<DatedSeries> all;
    all.push_back(to_dated_series(bsopm, bsopm_name));
    all.insert(all.end(), ml_predictors.begin(), ml_predictors.end());
    return comparison_report(actual, all);
}

std::string comparison_csv(const ComparisonReport& report) {
    std::string out = "date,actual";
    for (const auto& [name, values] : report.predictors) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (std::size_t i = 0; i < report.dates.size(); ++i) {
        out += report.dates[i].iso();
        out += ',';
        out += format_double(report.actual[i]);
        for (const auto& [name, values] : report.predictors) {
            out += ',';
            out += format_double(values[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json metrics_json(const MetricsVector& m) {
    nlohmann::json j{{"rmse", m.rmse},
                     {"absolute_error", {{"mean", m.absolute_error.mean}, {"stdev", m.absolute_error.stdev}}},
                     {"relative_error_pct",
                      {{"mean", m.relative_error_pct.mean}, {"stdev", m.relative_error_pct.stdev}}},
                     {"squared_error", {{"mean", m.squared_error.mean}, {"stdev", m.squared_error.stdev}}}};
    j["correlation"] = m.correlation ? nlohmann::json(*m.correlation) : nlohmann::json(nullptr);
    j["squared_correlation"] =
        m.squared_correlation ? nlohmann::json(*m.squared_correlation) : nlohmann::json(nullptr);
    j["trend_accuracy"] =
        m.trend_accuracy ? nlohmann::json(*m.trend_accuracy) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json comparison_json(const ComparisonReport& report) {
    nlohmann::json dates = nlohmann::json::array();
    for (const auto& d : report.dates) dates.push_back(d.iso());
    nlohmann::json dropped = nlohmann::json::array();
    for (const auto& d : report.dropped_dates) dropped.push_back(d.iso());
    nlohmann::json series{{"actual", report.actual}};
    for (const auto& [name, values] : report.predictors) series[name] = values;
    nlohmann::json metrics;
    for (const auto& [name, m] : report.metrics) metrics[name] = metrics_json(m);
    return nlohmann::json{{"dates", std::move(dates)},
                          {"dropped_dates", std::move(dropped)},
                          {"series", std::move(series)},
                          {"metrics", std::move(metrics)}};
}

}  // namespace fmp
