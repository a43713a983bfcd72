#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace fmp {

// One row of the bundled reference rate book: annualized risk-free rate
// (treasury-bill proxy) and dividend yield per instrument, with their
// observation dates. A missing dividend yield is zero.
struct RateEntry {
    std::string instrument;
    double risk_free_rate = 0.0;
    std::string rate_asof;
    double dividend_yield = 0.0;
    std::string yield_asof;
};

// CSV with header instrument,r,r_asof,q,q_asof.
std::map<std::string, RateEntry> load_rate_book(const std::filesystem::path& path);

// Compiled-in copy of the bundled reference book (data/rates.csv), so
// standard runs need no flags.
const std::map<std::string, RateEntry>& default_rate_book();

// Case-insensitive lookup.
const RateEntry* find_rates(const std::map<std::string, RateEntry>& book,
                            const std::string& instrument);

}  // namespace fmp
