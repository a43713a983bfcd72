#include "fmp/date.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace fmp {

namespace {

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m == 2 && leap(y)) return 29;
    return lengths[static_cast<std::size_t>(m - 1)];
}

// Howard Hinnant's civil-date algorithms (public domain).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

std::int64_t Date::serial() const { return days_from_civil(year, month, day); }

int Date::weekday() const {
    const std::int64_t z = serial();
    return static_cast<int>(z >= -3 ? (z + 3) % 7 : (z + 4) % 7 + 6);
}

Date Date::from_serial(std::int64_t days) { return civil_from_days(days); }

std::optional<Date> parse_date(std::string_view text) {
    std::array<std::string_view, 3> parts;
    std::size_t n = 0, start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '-' || text[i] == '.' || text[i] == '/') {
            if (n == 3) return std::nullopt;
            parts[n++] = text.substr(start, i - start);
            start = i + 1;
        }
    }
    if (n != 3) return std::nullopt;

    Date d;
    if (parts[0].size() == 4) {  // YYYY-MM-DD
        auto y = parse_int(parts[0]), m = parse_int(parts[1]), dd = parse_int(parts[2]);
        if (!y || !m || !dd) return std::nullopt;
        d = Date{*y, *m, *dd};
    } else {  // DD-MM-YYYY or DD-MM-YY
        auto dd = parse_int(parts[0]), m = parse_int(parts[1]), y = parse_int(parts[2]);
        if (!y || !m || !dd) return std::nullopt;
        int year = *y;
        if (parts[2].size() <= 2) year += (year < 70) ? 2000 : 1900;
        d = Date{year, *m, *dd};
    }
    if (!d.valid()) return std::nullopt;
    return d;
}

YearMonth YearMonth::next() const {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

YearMonth YearMonth::prev() const {
    return month == 1 ? YearMonth{year - 1, 12} : YearMonth{year, month - 1};
}

std::string YearMonth::str() const {
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
    auto dash = text.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    auto y = parse_int(text.substr(0, dash));
    auto m = parse_int(text.substr(dash + 1));
    if (!y || !m || *m < 1 || *m > 12) return std::nullopt;
    return YearMonth{*y, *m};
}

}  // namespace fmp
