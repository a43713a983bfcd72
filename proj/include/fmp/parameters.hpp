#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmp/market_data.hpp"

namespace fmp {

enum class TimeRounding { Exact, Round3 };

// Anchor for the trading-day count feeding the time fraction: the count
// normally runs within the calendar year of the target date; the rolling
// mode counts position in the whole history modulo year_length instead
// (sensitivity runs only).
enum class YearAnchor { CalendarYear, Rolling };

struct MarketConfig {
    double risk_free_rate = 0.0;   // annual decimal
    double dividend_yield = 0.0;   // annual decimal
    int year_length = 261;         // trading days per year
    TimeRounding time_rounding = TimeRounding::Round3;
    YearAnchor year_anchor = YearAnchor::CalendarYear;
    bool freeze_time = false;      // hold the month's first T for every day
    std::optional<double> sigma_override;  // skip the trailing-12-month estimate
};

std::string to_string(TimeRounding r);
std::string to_string(YearAnchor a);

// Flat key=value file with keys risk_free_rate, dividend_yield,
// year_length, time_rounding (exact|round3), year_anchor
// (calendar_year|rolling), freeze_time (true|false), sigma.
// Keys absent from the file keep their value from base.
MarketConfig load_market_config(const std::filesystem::path& path,
                                MarketConfig base = MarketConfig{});

// Arithmetic mean of daily log changes. Requires at least one entry.
double mean_drift(std::span<const ReturnEntry> entries);

// K = S * e^mean. Requires S > 0.
double strike_price(double spot, double mean);

// T = day_index / year_length; Round3 truncates the quotient to three
// decimal places. Requires day_index >= 1.
double time_fraction(int day_index, const MarketConfig& config);

// Sample standard deviation (n - 1 denominator) of the close prices of
// one month slice, in raw price units. Requires at least 2 bars.
double monthly_std(const PriceSeries& month_slice);

struct MonthlySigma {
    YearMonth month;
    double sigma = 0.0;
};

// Twelve monthly close-price standard deviations and their sum. The sum
// is the stored left-to-right accumulation of the entries, never
// re-derived.
struct VolatilityLedger {
    std::vector<MonthlySigma> months;  // oldest first, consecutive
    double sigma_annual = 0.0;
};

// Ledger over the 12 calendar months immediately preceding target_month.
// Throws, naming the month, if any of them has fewer than 2 bars.
VolatilityLedger annual_volatility(const PriceSeries& series, YearMonth target_month);

// CSV export: month,sigma rows plus a trailing sum row.
std::string ledger_csv(const VolatilityLedger& ledger);

}  // namespace fmp
