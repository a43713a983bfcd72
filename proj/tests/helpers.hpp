#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "fmp/market_data.hpp"

namespace fmptest {

inline fmp::Date d(const char* iso) { return *fmp::parse_date(iso); }

// Bars with open=high=low=close and a fixed volume; enough for close-
// driven code paths.
inline fmp::PriceSeries make_series(
    std::initializer_list<std::pair<const char*, double>> date_closes,
    std::string instrument = "test") {
    fmp::PriceSeries s;
    s.instrument = std::move(instrument);
    for (const auto& [date, close] : date_closes)
        s.bars.push_back(fmp::PriceBar{d(date), close, close, close, close, 1000.0});
    return s;
}

inline fmp::PriceSeries series_from(const std::vector<std::pair<fmp::Date, double>>& points,
                                    std::string instrument = "test") {
    fmp::PriceSeries s;
    s.instrument = std::move(instrument);
    for (const auto& [date, close] : points)
        s.bars.push_back(fmp::PriceBar{date, close, close, close, close, 1000.0});
    return s;
}

// Consecutive weekdays starting from a Monday; handy for month-free tests.
inline fmp::PriceSeries weekday_series(const std::vector<double>& closes,
                                       const char* start_iso = "2016-02-01") {
    fmp::PriceSeries s;
    s.instrument = "test";
    fmp::Date date = d(start_iso);
    for (double close : closes) {
        while (date.weekday() >= 5) date = fmp::Date::from_serial(date.serial() + 1);
        s.bars.push_back(fmp::PriceBar{date, close, close, close, close, 1000.0});
        date = fmp::Date::from_serial(date.serial() + 1);
    }
    return s;
}

inline std::filesystem::path data_dir() { return std::filesystem::path(FMP_DATA_DIR); }

inline const fmp::PriceSeries& sample_series() {
    static const fmp::PriceSeries series =
        fmp::load_price_series(data_dir() / "afi_sample.csv", {}, "AFI").series;
    return series;
}

inline std::filesystem::path write_temp(const std::string& content, const std::string& tag) {
    static int counter = 0;
    const auto path = std::filesystem::temp_directory_path() /
                      ("fmp_test_" + tag + "_" + std::to_string(counter++) + ".csv");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    return path;
}

}  // namespace fmptest
