#include "fmp/market_data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fmp/io.hpp"

namespace fmp {

TradingCalendar TradingCalendar::from_series(const PriceSeries& series) {
    TradingCalendar cal;
    cal.dates.reserve(series.bars.size());
    for (const auto& bar : series.bars) cal.dates.push_back(bar.date);
    return cal;
}

bool TradingCalendar::contains(const Date& d) const {
    return std::binary_search(dates.begin(), dates.end(), d);
}

namespace {

int find_column(const std::vector<std::string>& header, const std::string& name) {
    const std::string wanted = to_lower(name);
    for (std::size_t i = 0; i < header.size(); ++i)
        if (to_lower(header[i]) == wanted) return static_cast<int>(i);
    return -1;
}

std::optional<double> parse_positive(const std::string& field) {
    auto v = parse_double(field);
    if (!v || !std::isfinite(*v) || *v <= 0.0) return std::nullopt;
    return v;
}

}  // namespace

LoadResult load_price_series(std::istream& in, const CsvSchema& schema, std::string instrument) {
    std::string header_line;
    if (!std::getline(in, header_line)) throw std::runtime_error("empty input: no header row");

    const char delim = header_line.find('\t') != std::string::npos ? '\t' : ',';
    const auto header = split_fields(header_line, delim);

    const int c_date = find_column(header, schema.date);
    const int c_open = find_column(header, schema.open);
    const int c_high = find_column(header, schema.high);
    const int c_low = find_column(header, schema.low);
    const int c_close = find_column(header, schema.close);
    const int c_volume = find_column(header, schema.volume);
    for (const auto& [col, name] :
         {std::pair{c_date, schema.date}, {c_open, schema.open}, {c_high, schema.high},
          {c_low, schema.low}, {c_close, schema.close}, {c_volume, schema.volume}}) {
        if (col < 0) throw std::runtime_error("missing column in header: " + name);
    }
    const std::size_t need =
        static_cast<std::size_t>(std::max({c_date, c_open, c_high, c_low, c_close, c_volume})) + 1;

    LoadResult result;
    result.series.instrument = std::move(instrument);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line, delim);
        if (fields.size() < need) {
            ++result.dropped_rows;
            continue;
        }
        const auto date = parse_date(fields[static_cast<std::size_t>(c_date)]);
        const auto open = parse_positive(fields[static_cast<std::size_t>(c_open)]);
        const auto high = parse_positive(fields[static_cast<std::size_t>(c_high)]);
        const auto low = parse_positive(fields[static_cast<std::size_t>(c_low)]);
        const auto close = parse_positive(fields[static_cast<std::size_t>(c_close)]);
        const auto volume = parse_double(fields[static_cast<std::size_t>(c_volume)]);
        if (!date || !open || !high || !low || !close || !volume || !std::isfinite(*volume) ||
            *volume < 0.0) {
            ++result.dropped_rows;
            continue;
        }
        result.series.bars.push_back(PriceBar{*date, *open, *high, *low, *close, *volume});
    }

    if (result.series.bars.empty()) throw std::runtime_error("no parseable rows in input");

    auto& bars = result.series.bars;
    std::sort(bars.begin(), bars.end(),
              [](const PriceBar& a, const PriceBar& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < bars.size(); ++i)
        if (bars[i].date == bars[i - 1].date)
            throw std::runtime_error("duplicate date in input (ambiguous history): " +
                                     bars[i].date.iso());
    return result;
}

LoadResult load_price_series(const std::filesystem::path& path, const CsvSchema& schema,
                             std::string instrument) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open data file: " + path.string());
    if (instrument.empty()) instrument = path.stem().string();
    return load_price_series(in, schema, std::move(instrument));
}

std::string to_canonical_csv(const PriceSeries& series) {
    std::string out = "date,open,high,low,close,volume\n";
    for (const auto& bar : series.bars) {
        out += bar.date.iso();
        for (double v : {bar.open, bar.high, bar.low, bar.close, bar.volume}) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

PriceSeries slice_month(const PriceSeries& series, YearMonth month) {
    PriceSeries out;
    out.instrument = series.instrument;
    for (const auto& bar : series.bars)
        if (year_month(bar.date) == month) out.bars.push_back(bar);
    return out;
}

int trading_day_index(const TradingCalendar& calendar, const Date& date, const Date& anchor) {
    if (!calendar.contains(anchor))
        throw std::invalid_argument("anchor is not a trading day: " + anchor.iso());
    if (!calendar.contains(date))
        throw std::invalid_argument("date is not a trading day: " + date.iso());
    if (anchor > date)
        throw std::invalid_argument("anchor " + anchor.iso() + " is after date " + date.iso());
    const auto lo = std::lower_bound(calendar.dates.begin(), calendar.dates.end(), anchor);
    const auto hi = std::upper_bound(calendar.dates.begin(), calendar.dates.end(), date);
    return static_cast<int>(hi - lo);
}

ReturnStats daily_log_returns(const PriceSeries& series) {
    if (series.size() < 2)
        throw std::invalid_argument("daily_log_returns needs at least 2 bars, got " +
                                    std::to_string(series.size()));
    ReturnStats stats;
    stats.entries.reserve(series.size() - 1);
    double sum = 0.0;
    for (std::size_t i = 1; i < series.bars.size(); ++i) {
        const double x = std::log(series.bars[i].close / series.bars[i - 1].close);
        stats.entries.push_back(ReturnEntry{series.bars[i].date, x});
        sum += x;
    }
    stats.mean_drift = sum / static_cast<double>(stats.entries.size());
    return stats;
}

}  // namespace fmp
