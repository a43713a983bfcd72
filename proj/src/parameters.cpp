#include "fmp/parameters.hpp"

#include <cmath>
#include <stdexcept>

#include "fmp/io.hpp"

namespace fmp {

std::string to_string(TimeRounding r) {
    return r == TimeRounding::Exact ? "exact" : "round3";
}

std::string to_string(YearAnchor a) {
    return a == YearAnchor::CalendarYear ? "calendar_year" : "rolling";
}

MarketConfig load_market_config(const std::filesystem::path& path, MarketConfig base) {
    const auto kv = load_key_value_file(path);
    MarketConfig cfg = base;
    auto number = [&](const std::string& key, double& out) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        auto v = parse_double(it->second);
        if (!v) throw std::runtime_error("config: bad number for " + key + ": " + it->second);
        out = *v;
    };
    number("risk_free_rate", cfg.risk_free_rate);
    number("dividend_yield", cfg.dividend_yield);
    if (auto it = kv.find("year_length"); it != kv.end()) {
        auto v = parse_double(it->second);
        if (!v || *v < 1) throw std::runtime_error("config: bad year_length: " + it->second);
        cfg.year_length = static_cast<int>(*v);
    }
    if (auto it = kv.find("time_rounding"); it != kv.end()) {
        if (it->second == "exact")
            cfg.time_rounding = TimeRounding::Exact;
        else if (it->second == "round3")
            cfg.time_rounding = TimeRounding::Round3;
        else
            throw std::runtime_error("config: time_rounding must be exact or round3");
    }
    if (auto it = kv.find("year_anchor"); it != kv.end()) {
        if (it->second == "calendar_year")
            cfg.year_anchor = YearAnchor::CalendarYear;
        else if (it->second == "rolling")
            cfg.year_anchor = YearAnchor::Rolling;
        else
            throw std::runtime_error("config: year_anchor must be calendar_year or rolling");
    }
    if (auto it = kv.find("freeze_time"); it != kv.end())
        cfg.freeze_time = it->second == "true" || it->second == "1";
    if (auto it = kv.find("sigma"); it != kv.end()) {
        auto v = parse_double(it->second);
        if (!v) throw std::runtime_error("config: bad sigma: " + it->second);
        cfg.sigma_override = *v;
    }
    return cfg;
}

double mean_drift(std::span<const ReturnEntry> entries) {
    if (entries.empty()) throw std::invalid_argument("mean_drift: no return entries");
    double sum = 0.0;
    for (const auto& e : entries) sum += e.value;
    return sum / static_cast<double>(entries.size());
}

double strike_price(double spot, double mean) {
    if (!(spot > 0.0)) throw std::invalid_argument("strike_price: spot must be positive");
    return spot * std::exp(mean);
}

double time_fraction(int day_index, const MarketConfig& config) {
    if (day_index < 1) throw std::invalid_argument("time_fraction: day_index must be >= 1");
    const double t = static_cast<double>(day_index) / static_cast<double>(config.year_length);
    if (config.time_rounding == TimeRounding::Round3) return std::floor(t * 1000.0) / 1000.0;
    return t;
}

double monthly_std(const PriceSeries& month_slice) {
    const std::size_t n = month_slice.size();
    if (n < 2)
        throw std::invalid_argument("monthly_std: need at least 2 bars, got " + std::to_string(n));
    double mean = 0.0;
    for (const auto& bar : month_slice.bars) mean += bar.close;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (const auto& bar : month_slice.bars) {
        const double d = bar.close - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n - 1));
}

VolatilityLedger annual_volatility(const PriceSeries& series, YearMonth target_month) {
    // Walk back 12 months, then emit oldest first.
    std::vector<YearMonth> window(12);
    YearMonth m = target_month;
    for (int i = 11; i >= 0; --i) {
        m = m.prev();
        window[static_cast<std::size_t>(i)] = m;
    }

    VolatilityLedger ledger;
    ledger.months.reserve(12);
    double sum = 0.0;
    for (const auto& month : window) {
        const PriceSeries slice = slice_month(series, month);
        if (slice.size() < 2)
            throw std::invalid_argument("annual_volatility: month " + month.str() + " has " +
                                        std::to_string(slice.size()) +
                                        " bars; need at least 2 in each trailing month");
        const double sigma = monthly_std(slice);
        ledger.months.push_back(MonthlySigma{month, sigma});
        sum += sigma;
    }
    ledger.sigma_annual = sum;
    return ledger;
}

std::string ledger_csv(const VolatilityLedger& ledger) {
    std::string out = "month,sigma\n";
    for (const auto& entry : ledger.months) {
        out += entry.month.str();
        out += ',';
        out += format_double(entry.sigma);
        out += '\n';
    }
    out += "sum,";
    out += format_double(ledger.sigma_annual);
    out += '\n';
    return out;
}

}  // namespace fmp
