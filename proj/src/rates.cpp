#include "fmp/rates.hpp"

#include <fstream>
#include <stdexcept>

#include "fmp/io.hpp"

namespace fmp {

std::map<std::string, RateEntry> load_rate_book(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rate book: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("rate book is empty: " + path.string());

    std::map<std::string, RateEntry> book;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line, ',');
        if (fields.size() < 5)
            throw std::runtime_error("rate book: malformed line: " + line);
        RateEntry entry;
        entry.instrument = fields[0];
        const auto r = parse_double(fields[1]);
        if (!r) throw std::runtime_error("rate book: bad rate for " + entry.instrument);
        entry.risk_free_rate = *r;
        entry.rate_asof = fields[2];
        const auto q = fields[3].empty() ? std::optional<double>(0.0) : parse_double(fields[3]);
        if (!q) throw std::runtime_error("rate book: bad yield for " + entry.instrument);
        entry.dividend_yield = *q;
        entry.yield_asof = fields[4];
        book[entry.instrument] = std::move(entry);
    }
    return book;
}

const std::map<std::string, RateEntry>& default_rate_book() {
    static const std::map<std::string, RateEntry> book = [] {
        std::map<std::string, RateEntry> b;
        auto put = [&](const char* name, double r, const char* r_asof, double q,
                       const char* q_asof) {
            b[name] = RateEntry{name, r, r_asof, q, q_asof};
        };
        put("Beximco", 0.0297, "2017-01-31", 0.0, "2017-01-31");
        put("ACI", 0.0242, "2010-06-30", 0.013, "2010-06-30");
        put("GP", 0.0286, "2017-04-28", 0.0518, "2017-04-28");
        put("CityBank", 0.0086, "2018-05-31", 0.0214, "2018-05-31");
        put("Olympic", 0.0086, "2018-05-31", 0.019, "2018-05-31");
        put("AICL", 0.0942, "2013-03-15", 0.0356, "2013-03-29");
        put("AFI", 0.0248, "2016-02-29", 0.0589, "2016-02-29");
        put("ATL", 0.0216, "2018-03-30", 0.035, "2018-03-30");
        put("BYCO", 0.0997, "2014-06-15", 0.0, "");
        put("CTHR.N0000", 0.061, "2015-04-15", 0.0257, "2015-04-30");
        put("LLUB.N0000", 0.0815, "2018-03-15", 0.1172, "2018-03-30");
        return b;
    }();
    return book;
}

const RateEntry* find_rates(const std::map<std::string, RateEntry>& book,
                            const std::string& instrument) {
    const std::string wanted = to_lower(instrument);
    for (const auto& [name, entry] : book)
        if (to_lower(name) == wanted) return &entry;
    return nullptr;
}

}  // namespace fmp
