#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fmp/parameters.hpp"
#include "helpers.hpp"

using namespace fmp;
using fmptest::d;

TEST_CASE("mean drift of the published February returns") {
    const auto fixture = load_price_series(fmptest::data_dir() / "afi_feb2016.csv").series;
    const auto stats = daily_log_returns(fixture);
    REQUIRE(stats.count() == 21);
    CHECK(std::abs(mean_drift(stats.entries) - 0.001640969) < 1e-9);
}

TEST_CASE("mean drift basics") {
    std::vector<ReturnEntry> zero{{d("2016-02-01"), 0.0}, {d("2016-02-02"), 0.0}};
    CHECK(mean_drift(zero) == 0.0);

    std::vector<ReturnEntry> three{
        {d("2016-02-01"), 0.1}, {d("2016-02-02"), -0.1}, {d("2016-02-03"), 0.3}};
    CHECK(mean_drift(three) == doctest::Approx(0.1).epsilon(1e-15));

    CHECK_THROWS_AS(mean_drift(std::vector<ReturnEntry>{}), std::invalid_argument);
}

TEST_CASE("mean drift is invariant under permutation of the returns") {
    std::mt19937 rng(7);
    std::vector<ReturnEntry> entries;
    for (int i = 0; i < 40; ++i)
        entries.push_back({d("2016-02-01"), (static_cast<double>(rng() % 2000) - 1000.0) / 1e5});
    const double before = mean_drift(entries);
    std::shuffle(entries.begin(), entries.end(), rng);
    CHECK(strike_price(100.0, mean_drift(entries)) ==
          doctest::Approx(strike_price(100.0, before)).epsilon(1e-15));
}

TEST_CASE("strike price: published value, identity and exact exponential") {
    CHECK(std::abs(strike_price(329.5, 0.001640969) - 330.0411432) < 1e-6);
    CHECK(strike_price(123.45, 0.0) == 123.45);
    CHECK(strike_price(100.0, std::log(1.05)) == doctest::Approx(105.0).epsilon(1e-14));
    CHECK_THROWS_AS(strike_price(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(strike_price(-3.0, 0.1), std::invalid_argument);
}

TEST_CASE("strike ratio equals e^mean") {
    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double s = 1.0 + static_cast<double>(rng() % 100000) / 100.0;
        const double m = (static_cast<double>(rng() % 2000) - 1000.0) / 1e4;
        CHECK(strike_price(s, m) / s == doctest::Approx(std::exp(m)).epsilon(1e-12));
    }
}

TEST_CASE("time fraction: truncation mode reproduces 43/261 -> 0.164") {
    MarketConfig round3;  // defaults: year_length 261, Round3
    CHECK(time_fraction(43, round3) == 0.164);

    MarketConfig exact = round3;
    exact.time_rounding = TimeRounding::Exact;
    CHECK(time_fraction(261, exact) == 1.0);
    CHECK(time_fraction(1, exact) == doctest::Approx(0.0038314176245210726).epsilon(1e-15));
    CHECK(std::abs(time_fraction(43, exact) - 0.164750958) < 1e-9);

    CHECK_THROWS_AS(time_fraction(0, exact), std::invalid_argument);
}

TEST_CASE("time fraction is monotone in the day index in both modes") {
    for (const auto mode : {TimeRounding::Exact, TimeRounding::Round3}) {
        MarketConfig cfg;
        cfg.time_rounding = mode;
        double prev = 0.0;
        for (int day = 1; day <= 600; ++day) {
            const double t = time_fraction(day, cfg);
            CHECK(t >= prev);
            prev = t;
        }
    }
}

TEST_CASE("monthly std matches the published February dispersion") {
    const auto fixture = load_price_series(fmptest::data_dir() / "afi_feb2016.csv").series;
    const auto feb = slice_month(fixture, YearMonth{2016, 2});
    REQUIRE(feb.size() == 21);
    CHECK(std::abs(monthly_std(feb) - 3.743) < 5e-3);
}

TEST_CASE("monthly std basics") {
    CHECK(monthly_std(fmptest::weekday_series({7, 7, 7, 7, 7})) == 0.0);
    CHECK(monthly_std(fmptest::weekday_series({1, 2, 3})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(monthly_std(fmptest::weekday_series({1})), std::invalid_argument);
}

TEST_CASE("monthly std: translation invariance and linear scaling") {
    std::mt19937 rng(23);
    std::vector<double> closes;
    for (int i = 0; i < 21; ++i) closes.push_back(50.0 + static_cast<double>(rng() % 1000) / 10.0);
    const double base = monthly_std(fmptest::weekday_series(closes));

    std::vector<double> shifted = closes, scaled = closes;
    for (auto& c : shifted) c += 1234.5;
    for (auto& c : scaled) c *= 3.25;
    CHECK(monthly_std(fmptest::weekday_series(shifted)) == doctest::Approx(base).epsilon(1e-10));
    CHECK(monthly_std(fmptest::weekday_series(scaled)) ==
          doctest::Approx(3.25 * base).epsilon(1e-10));
}

TEST_CASE("annual volatility reproduces the twelve-month ledger") {
    const auto ledger = annual_volatility(fmptest::sample_series(), YearMonth{2016, 3});
    REQUIRE(ledger.months.size() == 12);
    const double published[12] = {6.464, 7.429, 8.472, 5.543, 1.586, 2.502,
                                  1.451, 3.499, 4.566, 3.738, 7.871, 3.743};
    CHECK(ledger.months.front().month == YearMonth{2015, 3});
    CHECK(ledger.months.back().month == YearMonth{2016, 2});
    for (std::size_t i = 1; i < ledger.months.size(); ++i)
        CHECK(ledger.months[i].month == ledger.months[i - 1].month.next());
    for (int i = 0; i < 12; ++i)
        CHECK(std::abs(ledger.months[static_cast<std::size_t>(i)].sigma - published[i]) < 5e-3);
    CHECK(std::abs(ledger.sigma_annual - 56.864) < 1e-3);
}

TEST_CASE("annual volatility sum is the stored accumulation of its entries") {
    const auto ledger = annual_volatility(fmptest::sample_series(), YearMonth{2016, 3});
    double sum = 0.0;
    for (const auto& m : ledger.months) sum += m.sigma;
    CHECK(ledger.sigma_annual == sum);  // bit-for-bit
}

TEST_CASE("annual volatility of constant prices is zero") {
    std::vector<std::pair<fmp::Date, double>> points;
    for (int month = 1; month <= 13; ++month) {
        const int y = 2015 + (month - 1) / 12;
        const int m = (month - 1) % 12 + 1;
        for (int day : {2, 9, 16, 23}) points.emplace_back(fmp::Date{y, m, day}, 42.0);
    }
    const auto series = fmptest::series_from(points);
    const auto ledger = annual_volatility(series, YearMonth{2016, 1});
    for (const auto& m : ledger.months) CHECK(m.sigma == 0.0);
    CHECK(ledger.sigma_annual == 0.0);
}

TEST_CASE("annual volatility equals the hand-added monthly stds") {
    std::mt19937 rng(5);
    std::vector<std::pair<fmp::Date, double>> points;
    for (int month = 0; month < 12; ++month) {
        const int y = 2015 + month / 12;
        const int m = month % 12 + 1;
        for (int day : {3, 8, 13, 18, 23})
            points.emplace_back(fmp::Date{y, m, day},
                                100.0 + static_cast<double>(rng() % 500) / 10.0);
    }
    const auto series = fmptest::series_from(points);
    const auto ledger = annual_volatility(series, YearMonth{2016, 1});
    double hand = 0.0;
    for (int month = 0; month < 12; ++month)
        hand += monthly_std(slice_month(series, YearMonth{2015 + month / 12, month % 12 + 1}));
    CHECK(ledger.sigma_annual == doctest::Approx(hand).epsilon(1e-15));
}

TEST_CASE("annual volatility names the deficient month") {
    // Series starts April 2015, so a March 2016 target misses 2015-03.
    fmp::PriceSeries series = fmptest::sample_series();
    std::erase_if(series.bars, [](const PriceBar& b) { return year_month(b.date) == YearMonth{2015, 3}; });
    CHECK_THROWS_WITH_AS(annual_volatility(series, YearMonth{2016, 3}),
                         doctest::Contains("2015-03"), std::invalid_argument);
}

TEST_CASE("market config file loads and overlays") {
    const auto path = fmptest::write_temp(
        "# rates\nrisk_free_rate = 0.0248\ndividend_yield=0.0589\ntime_rounding=exact\n"
        "year_length = 260\nfreeze_time = true\nsigma = 12.5\n",
        "config");
    const auto cfg = load_market_config(path);
    CHECK(cfg.risk_free_rate == 0.0248);
    CHECK(cfg.dividend_yield == 0.0589);
    CHECK(cfg.year_length == 260);
    CHECK(cfg.time_rounding == TimeRounding::Exact);
    CHECK(cfg.freeze_time);
    REQUIRE(cfg.sigma_override.has_value());
    CHECK(*cfg.sigma_override == 12.5);

    MarketConfig base;
    base.risk_free_rate = 0.99;
    const auto partial = fmptest::write_temp("dividend_yield=0.01\n", "config");
    const auto overlaid = load_market_config(partial, base);
    CHECK(overlaid.risk_free_rate == 0.99);
    CHECK(overlaid.dividend_yield == 0.01);
}
