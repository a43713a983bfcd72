#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fmp/date.hpp"

namespace fmp {

// One trading day's OHLCV record. Only positivity and presence are
// enforced; frontier-market feeds are noisy, so low <= min(open, close)
// and similar shape constraints are deliberately not checked.
struct PriceBar {
    Date date;
    double open = 0.0;
    double high = 0.0;
    double low = 0.0;
    double close = 0.0;
    double volume = 0.0;
};

// Ordered history for one instrument: dates strictly increasing, every
// bar complete. Rows with missing fields are dropped at ingestion,
// never imputed.
struct PriceSeries {
    std::string instrument;
    std::vector<PriceBar> bars;

    bool empty() const { return bars.empty(); }
    std::size_t size() const { return bars.size(); }
};

// Trading days are defined by the data: the calendar is exactly the set
// of bar dates of its source series.
struct TradingCalendar {
    std::vector<Date> dates;

    static TradingCalendar from_series(const PriceSeries& series);
    bool contains(const Date& d) const;
};

// Maps the six attributes to CSV header names (case-insensitive).
// Defaults match the canonical header: date, open, high, low, close, volume.
struct CsvSchema {
    std::string date = "date";
    std::string open = "open";
    std::string high = "high";
    std::string low = "low";
    std::string close = "close";
    std::string volume = "volume";
};

struct LoadResult {
    PriceSeries series;
    std::size_t dropped_rows = 0;
};

// Delimiter-separated text with a header row; ',' or '\t' auto-detected
// from the header line. Rows with any missing or unparseable field (or a
// non-positive price) are dropped and counted. Result is sorted ascending
// by date. Throws on an unreadable source, on zero parseable rows, and on
// duplicate dates after cleaning (ambiguous history).
LoadResult load_price_series(std::istream& in, const CsvSchema& schema = {},
                             std::string instrument = {});
LoadResult load_price_series(const std::filesystem::path& path, const CsvSchema& schema = {},
                             std::string instrument = {});

// Canonical re-emission: ISO dates, shortest round-trip numbers.
std::string to_canonical_csv(const PriceSeries& series);

// Sub-series of bars falling in the given calendar month; may be empty.
PriceSeries slice_month(const PriceSeries& series, YearMonth month);

// 1-based count of trading days from anchor through date inclusive.
// Both must be trading days in the calendar and anchor <= date.
int trading_day_index(const TradingCalendar& calendar, const Date& date, const Date& anchor);

struct ReturnEntry {
    Date date;  // the later date of the pair
    double value = 0.0;
};

// Daily log price changes X_t = ln(close_t / close_{t-1}) and their mean.
struct ReturnStats {
    std::vector<ReturnEntry> entries;
    double mean_drift = 0.0;

    std::size_t count() const { return entries.size(); }
};

// Requires at least 2 bars.
ReturnStats daily_log_returns(const PriceSeries& series);

}  // namespace fmp
