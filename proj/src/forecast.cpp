#include "fmp/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "fmp/io.hpp"
#include "fmp/pricing.hpp"

namespace fmp {

namespace {

// Substitute for a degenerate (zero) volatility ledger. Large enough to
// saturate N(d1) -> 1 and N(d2) -> 0, so the quote degenerates to the
// discounted spot/strike pair; any real ledger never triggers it.
constexpr double kSigmaSaturation = 1e9;

std::vector<Date> project_trading_days(const std::vector<Date>& base_dates, YearMonth target) {
    std::set<int> weekdays;
    for (const auto& d : base_dates) weekdays.insert(d.weekday());
    std::vector<Date> out;
    for (int day = 1; day <= 31; ++day) {
        const Date d{target.year, target.month, day};
        if (d.valid() && weekdays.count(d.weekday())) out.push_back(d);
    }
    return out;
}

}  // namespace

PredictionReport forecast_month(const PriceSeries& series, YearMonth target_month,
                                const MarketConfig& config) {
    const YearMonth base_month = target_month.prev();
    const PriceSeries base_bars = slice_month(series, base_month);
    if (base_bars.size() < 2)
        throw std::invalid_argument("forecast_month: base month " + base_month.str() + " has " +
                                    std::to_string(base_bars.size()) + " bars; need at least 2");

    // Drift over the returns tagged with base-month dates. When the series
    // carries earlier history, the first base-month bar contributes its
    // change from the last prior close.
    const ReturnStats all_returns = daily_log_returns(series);
    std::vector<ReturnEntry> base_returns;
    for (const auto& entry : all_returns.entries)
        if (year_month(entry.date) == base_month) base_returns.push_back(entry);
    const double mean = mean_drift(base_returns);

    double sigma = config.sigma_override ? *config.sigma_override
                                         : annual_volatility(series, target_month).sigma_annual;
    const bool floored = !(sigma > 0.0);
    if (floored) sigma = kSigmaSaturation;

    const PriceSeries target_bars = slice_month(series, target_month);
    const bool backtest = !target_bars.empty();

    std::vector<Date> base_dates;
    for (const auto& bar : base_bars.bars) base_dates.push_back(bar.date);

    std::vector<Date> target_dates;
    if (backtest) {
        for (const auto& bar : target_bars.bars) target_dates.push_back(bar.date);
    } else {
        target_dates = project_trading_days(base_dates, target_month);
    }
    if (target_dates.empty())
        throw std::invalid_argument("forecast_month: target month " + target_month.str() +
                                    " has no trading dates");

    // Trading calendar for the day count: all known dates plus any
    // projected target dates.
    std::set<Date> all_dates;
    for (const auto& bar : series.bars) all_dates.insert(bar.date);
    for (const auto& d : target_dates) all_dates.insert(d);

    std::vector<Date> counting_dates;
    if (config.year_anchor == YearAnchor::CalendarYear) {
        for (const auto& d : all_dates)
            if (d.year == target_month.year) counting_dates.push_back(d);
    } else {
        counting_dates.assign(all_dates.begin(), all_dates.end());
    }
    auto day_index = [&](const Date& d) {
        const auto hi = std::upper_bound(counting_dates.begin(), counting_dates.end(), d);
        int pos = static_cast<int>(hi - counting_dates.begin());
        if (config.year_anchor == YearAnchor::Rolling)
            pos = (pos - 1) % config.year_length + 1;
        return pos;
    };

    PredictionReport report;
    report.instrument = series.instrument;
    report.target_month = target_month;
    report.projected_dates = !backtest;
    report.config = ReportConfig{config.risk_free_rate,
                                 config.dividend_yield,
                                 config.year_length,
                                 config.time_rounding,
                                 config.year_anchor,
                                 config.freeze_time,
                                 sigma,
                                 floored,
                                 mean};

    std::optional<double> frozen_time;
    for (std::size_t i = 0; i < target_dates.size(); ++i) {
        const std::size_t base_i = std::min(i, base_bars.size() - 1);
        ForecastRow row;
        row.target_date = target_dates[i];
        row.base_date = base_dates[base_i];
        row.padded = i >= base_bars.size();
        row.base_close = base_bars.bars[base_i].close;
        row.strike = strike_price(row.base_close, mean);
        double t = time_fraction(day_index(row.target_date), config);
        if (config.freeze_time) {
            if (!frozen_time) frozen_time = t;
            t = *frozen_time;
        }
        row.time_fraction = t;
        const OptionQuote quote = price_options(PricingInputs{
            row.base_close, row.strike, config.risk_free_rate, config.dividend_yield, sigma, t});
        row.call = quote.call;
        row.put = quote.put;
        row.predicted_close = quote.predicted_close;
        if (backtest) row.actual_close = target_bars.bars[i].close;
        report.rows.push_back(row);
    }
    return report;
}

std::vector<PredictionReport> rolling_forecast(const PriceSeries& series, YearMonth start_month,
                                               int horizon_months, const MarketConfig& config) {
    if (horizon_months < 1)
        throw std::invalid_argument("rolling_forecast: horizon must be >= 1 months");

    // Volatility and rates stay constant across the whole horizon.
    MarketConfig pinned = config;
    if (!pinned.sigma_override)
        pinned.sigma_override = annual_volatility(series, start_month).sigma_annual;

    std::vector<PredictionReport> reports;
    reports.push_back(forecast_month(series, start_month, pinned));

    // Later months see only history before start_month plus the chained
    // predictions; actuals are joined back from the original series.
    PriceSeries chained;
    chained.instrument = series.instrument;
    for (const auto& bar : series.bars)
        if (year_month(bar.date) < start_month) chained.bars.push_back(bar);

    std::map<Date, double> actual_by_date;
    for (const auto& bar : series.bars) actual_by_date[bar.date] = bar.close;

    YearMonth month = start_month;
    for (int k = 1; k < horizon_months; ++k) {
        for (const auto& row : reports.back().rows)
            chained.bars.push_back(PriceBar{row.target_date, row.predicted_close,
                                            row.predicted_close, row.predicted_close,
                                            row.predicted_close, 0.0});
        month = month.next();
        PredictionReport report = forecast_month(chained, month, pinned);
        for (auto& row : report.rows) {
            auto it = actual_by_date.find(row.target_date);
            if (it != actual_by_date.end()) row.actual_close = it->second;
        }
        reports.push_back(std::move(report));
    }
    return reports;
}

std::vector<VolatilityTrendPoint> volatility_trend(const PriceSeries& series, int months_window,
                                                   double spike_ratio) {
    if (months_window < 1)
        throw std::invalid_argument("volatility_trend: months_window must be >= 1");
    if (series.empty()) throw std::invalid_argument("volatility_trend: empty series");

    std::vector<VolatilityTrendPoint> points;
    YearMonth m = year_month(series.bars.front().date);
    const YearMonth last = year_month(series.bars.back().date);
    while (m <= last) {
        const PriceSeries slice = slice_month(series, m);
        if (slice.size() >= 2)
            points.push_back(VolatilityTrendPoint{m, monthly_std(slice), false});
        m = m.next();
    }
    if (points.size() < static_cast<std::size_t>(months_window) + 1)
        throw std::invalid_argument("volatility_trend: need at least " +
                                    std::to_string(months_window + 1) + " months, got " +
                                    std::to_string(points.size()));

    for (std::size_t i = static_cast<std::size_t>(months_window); i < points.size(); ++i) {
        double sum = 0.0;
        for (std::size_t j = i - static_cast<std::size_t>(months_window); j < i; ++j)
            sum += points[j].sigma;
        const double trailing_mean = sum / static_cast<double>(months_window);
        points[i].flagged = points[i].sigma > spike_ratio * trailing_mean;
    }
    return points;
}

std::string report_csv(const PredictionReport& report) {
    std::string out =
        "target_date,base_date,base_close,strike,time_fraction,call,put,predicted_close,"
        "actual_close,padded\n";
    for (const auto& row : report.rows) {
        out += row.target_date.iso();
        out += ',';
        out += row.base_date.iso();
        for (double v : {row.base_close, row.strike, row.time_fraction, row.call, row.put,
                         row.predicted_close}) {
            out += ',';
            out += format_double(v);
        }
        out += ',';
        if (row.actual_close) out += format_double(*row.actual_close);
        out += ',';
        out += row.padded ? '1' : '0';
        out += '\n';
    }
    return out;
}

nlohmann::json report_json(const PredictionReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json j{{"target_date", row.target_date.iso()},
                         {"base_date", row.base_date.iso()},
                         {"base_close", row.base_close},
                         {"strike", row.strike},
                         {"time_fraction", row.time_fraction},
                         {"call", row.call},
                         {"put", row.put},
                         {"predicted_close", row.predicted_close},
                         {"padded", row.padded}};
        if (row.actual_close)
            j["actual_close"] = *row.actual_close;
        else
            j["actual_close"] = nullptr;
        rows.push_back(std::move(j));
    }
    const auto& cfg = report.config;
    return nlohmann::json{{"instrument", report.instrument},
                          {"target_month", report.target_month.str()},
                          {"alignment", "ordinal-trading-day"},
                          {"projected_dates", report.projected_dates},
                          {"config",
                           {{"risk_free_rate", cfg.risk_free_rate},
                            {"dividend_yield", cfg.dividend_yield},
                            {"year_length", cfg.year_length},
                            {"time_rounding", to_string(cfg.time_rounding)},
                            {"year_anchor", to_string(cfg.year_anchor)},
                            {"freeze_time", cfg.freeze_time},
                            {"sigma_annual", cfg.sigma_annual},
                            {"sigma_floor_applied", cfg.sigma_floor_applied},
                            {"mean_drift", cfg.mean_drift}}},
                          {"rows", std::move(rows)}};
}

std::string trend_csv(const std::vector<VolatilityTrendPoint>& points) {
    std::string out = "month,sigma,flagged\n";
    for (const auto& p : points) {
        out += p.month.str();
        out += ',';
        out += format_double(p.sigma);
        out += ',';
        out += p.flagged ? '1' : '0';
        out += '\n';
    }
    return out;
}

}  // namespace fmp
