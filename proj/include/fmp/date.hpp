#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace fmp {

// Calendar date. Ordering is chronological.
struct Date {
    int year = 0;
    int month = 0;  // 1..12
    int day = 0;    // 1..31

    auto operator<=>(const Date&) const = default;

    bool valid() const;
    std::string iso() const;           // YYYY-MM-DD
    std::int64_t serial() const;       // days since 1970-01-01
    int weekday() const;               // 0 = Monday .. 6 = Sunday

    static Date from_serial(std::int64_t days);
};

// Accepts YYYY-MM-DD, DD-MM-YYYY and DD-MM-YY with '-', '.' or '/' separators.
// Two-digit years pivot at 70: 00-69 -> 2000s, 70-99 -> 1900s.
std::optional<Date> parse_date(std::string_view text);

struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12

    auto operator<=>(const YearMonth&) const = default;

    YearMonth next() const;
    YearMonth prev() const;
    std::string str() const;  // YYYY-MM
};

// Accepts YYYY-MM.
std::optional<YearMonth> parse_year_month(std::string_view text);

inline YearMonth year_month(const Date& d) { return {d.year, d.month}; }

}  // namespace fmp
