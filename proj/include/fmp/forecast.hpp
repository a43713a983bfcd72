#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmp/market_data.hpp"
#include "fmp/parameters.hpp"

namespace fmp {

// One forecast day. Alignment is by ordinal trading day: row i's base
// close is the i-th trading day of the base month. When the target month
// has more trading days than the base month, surplus rows reuse the base
// month's final close and are marked padded.
struct ForecastRow {
    Date target_date;
    Date base_date;
    double base_close = 0.0;       // S
    double strike = 0.0;           // K = S * e^mean
    double time_fraction = 0.0;    // T
    double call = 0.0;
    double put = 0.0;
    double predicted_close = 0.0;  // (call + put) / 2
    std::optional<double> actual_close;
    bool padded = false;
};

// Effective parameter snapshot; constant across all rows of a report.
struct ReportConfig {
    double risk_free_rate = 0.0;
    double dividend_yield = 0.0;
    int year_length = 261;
    TimeRounding time_rounding = TimeRounding::Round3;
    YearAnchor year_anchor = YearAnchor::CalendarYear;
    bool freeze_time = false;
    double sigma_annual = 0.0;  // value fed to the pricing formulas
    bool sigma_floor_applied = false;
    double mean_drift = 0.0;    // base-month drift behind every strike
};

struct PredictionReport {
    std::string instrument;
    YearMonth target_month;
    bool projected_dates = false;  // true-forecast mode (no target-month data)
    std::vector<ForecastRow> rows;
    ReportConfig config;
};

// Month-ahead forecast: for the i-th trading day of the target month,
// S is the close of the i-th trading day of the preceding month, the
// strike uses that month's mean daily log change, sigma is the trailing
// twelve-month ledger sum (unless overridden), and T is the trading-day
// ordinal of the target date within its year over year_length.
//
// Target dates come from the data when the target month is present
// (backtesting); otherwise they are projected onto the target month from
// the base month's weekday pattern.
PredictionReport forecast_month(const PriceSeries& series, YearMonth target_month,
                                const MarketConfig& config);

// Chained multi-month forecasts: month k+1's base closes are month k's
// predicted closes; actual data is used only for months before
// start_month. Sigma, r and q are held constant across the horizon.
std::vector<PredictionReport> rolling_forecast(const PriceSeries& series, YearMonth start_month,
                                               int horizon_months, const MarketConfig& config);

struct VolatilityTrendPoint {
    YearMonth month;
    double sigma = 0.0;
    bool flagged = false;
};

// Monthly close-price dispersion with spike flags: a month is flagged
// when its sigma exceeds spike_ratio times the mean of the previous
// months_window sigmas. Needs at least months_window + 1 months.
std::vector<VolatilityTrendPoint> volatility_trend(const PriceSeries& series,
                                                   int months_window = 6,
                                                   double spike_ratio = 2.0);

std::string report_csv(const PredictionReport& report);
nlohmann::json report_json(const PredictionReport& report);

std::string trend_csv(const std::vector<VolatilityTrendPoint>& points);

}  // namespace fmp
