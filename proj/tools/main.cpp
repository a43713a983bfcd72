#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fmp/forecast.hpp"
#include "fmp/io.hpp"
#include "fmp/market_data.hpp"
#include "fmp/metrics.hpp"
#include "fmp/ml/dataset.hpp"
#include "fmp/ml/ensemble.hpp"
#include "fmp/ml/model.hpp"
#include "fmp/ml/model_io.hpp"
#include "fmp/ml/validate.hpp"
#include "fmp/parameters.hpp"
#include "fmp/pricing.hpp"
#include "fmp/rates.hpp"

namespace {

using nlohmann::json;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 42;
};

void write_run_config(const GlobalOpts& g, const std::string& command, json effective) {
    effective["command"] = command;
    effective["seed"] = g.seed;
    effective["out_dir"] = g.out_dir;
    if (!g.config_path.empty()) effective["config_file"] = g.config_path;
    fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "run_config.json",
                           effective.dump(2) + "\n");
}

json config_json(const fmp::MarketConfig& cfg) {
    json j{{"risk_free_rate", cfg.risk_free_rate},
           {"dividend_yield", cfg.dividend_yield},
           {"year_length", cfg.year_length},
           {"time_rounding", fmp::to_string(cfg.time_rounding)},
           {"year_anchor", fmp::to_string(cfg.year_anchor)},
           {"freeze_time", cfg.freeze_time}};
    j["sigma_override"] = cfg.sigma_override ? json(*cfg.sigma_override) : json(nullptr);
    return j;
}

fmp::YearMonth parse_month_arg(const std::string& text) {
    auto m = fmp::parse_year_month(text);
    if (!m) throw std::runtime_error("bad month (expected YYYY-MM): " + text);
    return *m;
}

fmp::Date parse_date_arg(const std::string& text) {
    auto d = fmp::parse_date(text);
    if (!d) throw std::runtime_error("bad date: " + text);
    return *d;
}

// Shared market-parameter options for forecasting commands.
struct MarketOpts {
    std::optional<double> rate;
    std::optional<double> yield;
    std::optional<double> sigma;
    std::string rates_path;
    std::string instrument;
    int year_length = 0;  // 0 = keep
    std::string rounding;
    std::string anchor;
    bool freeze_time = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--r", rate, "risk-free rate, annual decimal (overrides the rate book)");
        cmd->add_option("--q", yield, "dividend yield, annual decimal (overrides the rate book)");
        cmd->add_option("--sigma", sigma, "volatility override (skip the trailing-12-month sum)");
        cmd->add_option("--rates", rates_path, "rate book CSV (default: compiled-in book)");
        cmd->add_option("--instrument", instrument, "rate-book key (default: data file stem)");
        cmd->add_option("--year-length", year_length, "trading days per year (default 261)");
        cmd->add_option("--rounding", rounding, "time fraction rounding: exact|round3")
            ->check(CLI::IsMember({"exact", "round3"}));
        cmd->add_option("--anchor", anchor, "day-count anchor: calendar_year|rolling")
            ->check(CLI::IsMember({"calendar_year", "rolling"}));
        cmd->add_flag("--freeze-time", freeze_time, "hold the month's first T for every day");
    }

    // Precedence: flags > config file > rate book > defaults.
    fmp::MarketConfig resolve(const GlobalOpts& g, const std::string& fallback_instrument) const {
        fmp::MarketConfig cfg;
        const std::string name = instrument.empty() ? fallback_instrument : instrument;
        const fmp::RateEntry* entry = nullptr;
        if (!rates_path.empty()) {
            const auto book = fmp::load_rate_book(rates_path);
            entry = fmp::find_rates(book, name);
            if (!entry) throw std::runtime_error("instrument not in rate book: " + name);
        } else {
            entry = fmp::find_rates(fmp::default_rate_book(), name);
        }
        if (entry) {
            cfg.risk_free_rate = entry->risk_free_rate;
            cfg.dividend_yield = entry->dividend_yield;
        }
        if (!g.config_path.empty()) cfg = fmp::load_market_config(g.config_path, cfg);
        if (rate) cfg.risk_free_rate = *rate;
        if (yield) cfg.dividend_yield = *yield;
        if (sigma) cfg.sigma_override = *sigma;
        if (year_length > 0) cfg.year_length = year_length;
        if (!rounding.empty())
            cfg.time_rounding =
                rounding == "exact" ? fmp::TimeRounding::Exact : fmp::TimeRounding::Round3;
        if (!anchor.empty())
            cfg.year_anchor = anchor == "rolling" ? fmp::YearAnchor::Rolling
                                                  : fmp::YearAnchor::CalendarYear;
        if (freeze_time) cfg.freeze_time = true;
        return cfg;
    }
};

void print_quote_breakdown(double spot, std::optional<double> mean, const fmp::PricingInputs& in,
                           const fmp::OptionQuote& quote) {
    auto line = [](const char* key, double v) {
        std::printf("%-18s %s\n", key, num(v).c_str());
    };
    line("spot", spot);
    if (mean) {
        line("mean", *mean);
        line("e_mean", std::exp(*mean));
        line("strike_over_spot", in.strike / spot);
    }
    line("strike", in.strike);
    line("time", in.time);
    line("rate", in.rate);
    line("yield", in.yield);
    line("sigma", in.sigma);
    line("d1", quote.d1);
    line("d2", quote.d2);
    line("N_d1", fmp::std_normal_cdf(quote.d1));
    line("N_d2", fmp::std_normal_cdf(quote.d2));
    line("N_neg_d1", fmp::std_normal_cdf(-quote.d1));
    line("N_neg_d2", fmp::std_normal_cdf(-quote.d2));
    line("call", quote.call);
    line("put", quote.put);
    line("predicted_close", quote.predicted_close);
}

int cmd_ingest(const GlobalOpts& g, const std::string& data_path, const std::string& instrument,
               const fmp::CsvSchema& schema) {
    const auto loaded = fmp::load_price_series(data_path, schema, instrument);
    const auto& series = loaded.series;
    std::printf("instrument: %s\n", series.instrument.c_str());
    std::printf("rows: %zu\n", series.size());
    std::printf("dropped: %zu\n", loaded.dropped_rows);
    std::printf("range: %s .. %s\n", series.bars.front().date.iso().c_str(),
                series.bars.back().date.iso().c_str());
    const auto out = std::filesystem::path(g.out_dir) / "canonical.csv";
    fmp::write_file_atomic(out, fmp::to_canonical_csv(series));
    std::printf("canonical: %s\n", out.string().c_str());
    write_run_config(g, "ingest",
                     json{{"data", data_path},
                          {"instrument", series.instrument},
                          {"rows", series.size()},
                          {"dropped", loaded.dropped_rows},
                          {"columns",
                           {{"date", schema.date},
                            {"open", schema.open},
                            {"high", schema.high},
                            {"low", schema.low},
                            {"close", schema.close},
                            {"volume", schema.volume}}}});
    return 0;
}

int cmd_volatility(const GlobalOpts& g, const std::string& data_path, const std::string& month,
                   bool trend, int trend_window, double spike_ratio) {
    const auto series = fmp::load_price_series(data_path).series;
    const auto target = parse_month_arg(month);
    const auto ledger = fmp::annual_volatility(series, target);
    for (const auto& entry : ledger.months)
        std::printf("%s %s\n", entry.month.str().c_str(), num(entry.sigma).c_str());
    std::printf("Sum %s\n", num(ledger.sigma_annual).c_str());
    fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "volatility.csv",
                           fmp::ledger_csv(ledger));
    if (trend) {
        const auto points = fmp::volatility_trend(series, trend_window, spike_ratio);
        for (const auto& p : points)
            if (p.flagged)
                std::printf("spike: %s %s\n", p.month.str().c_str(), num(p.sigma).c_str());
        fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "volatility_trend.csv",
                               fmp::trend_csv(points));
    }
    write_run_config(g, "volatility",
                     json{{"data", data_path},
                          {"month", target.str()},
                          {"trend", trend},
                          {"trend_window", trend_window},
                          {"spike_ratio", spike_ratio}});
    return 0;
}

int cmd_forecast(const GlobalOpts& g, const std::string& data_path, const std::string& month,
                 int horizon, const MarketOpts& mopts, const std::string& explain) {
    const auto series = fmp::load_price_series(data_path).series;
    const auto start = parse_month_arg(month);
    const auto cfg = mopts.resolve(g, series.instrument);

    const auto reports = fmp::rolling_forecast(series, start, horizon, cfg);
    for (const auto& report : reports) {
        const std::string stem = "forecast_" + report.target_month.str();
        fmp::write_file_atomic(std::filesystem::path(g.out_dir) / (stem + ".csv"),
                               fmp::report_csv(report));
        fmp::write_file_atomic(std::filesystem::path(g.out_dir) / (stem + ".json"),
                               fmp::report_json(report).dump(2) + "\n");
        std::printf("%s %s: %zu rows, sigma %s, mean %s, first close %s\n",
                    report.instrument.c_str(), report.target_month.str().c_str(),
                    report.rows.size(), num(report.config.sigma_annual).c_str(),
                    num(report.config.mean_drift).c_str(),
                    num(report.rows.front().predicted_close).c_str());
    }

    if (!explain.empty()) {
        const auto date = parse_date_arg(explain);
        const fmp::ForecastRow* found = nullptr;
        const fmp::PredictionReport* in_report = nullptr;
        for (const auto& report : reports)
            for (const auto& row : report.rows)
                if (row.target_date == date) {
                    found = &row;
                    in_report = &report;
                }
        if (!found)
            throw std::runtime_error("explain: " + date.iso() + " is not in the forecast range");
        const fmp::PricingInputs inputs{found->base_close,
                                        found->strike,
                                        in_report->config.risk_free_rate,
                                        in_report->config.dividend_yield,
                                        in_report->config.sigma_annual,
                                        found->time_fraction};
        std::printf("-- %s (base %s%s) --\n", found->target_date.iso().c_str(),
                    found->base_date.iso().c_str(), found->padded ? ", padded" : "");
        print_quote_breakdown(found->base_close, in_report->config.mean_drift, inputs,
                              fmp::price_options(inputs));
        if (found->actual_close) std::printf("%-18s %s\n", "actual_close", num(*found->actual_close).c_str());
    }

    write_run_config(g, "forecast",
                     json{{"data", data_path},
                          {"instrument", series.instrument},
                          {"start_month", start.str()},
                          {"horizon", horizon},
                          {"market", config_json(cfg)},
                          {"effective_sigma", reports.front().config.sigma_annual},
                          {"explain", explain}});
    return 0;
}

int cmd_price(const GlobalOpts& g, double spot, std::optional<double> strike,
              std::optional<double> mean, std::optional<double> time, std::optional<int> day,
              double rate, double yield, double sigma, int year_length,
              const std::string& rounding) {
    fmp::MarketConfig cfg;
    cfg.year_length = year_length;
    cfg.time_rounding = rounding == "exact" ? fmp::TimeRounding::Exact : fmp::TimeRounding::Round3;

    if (strike.has_value() == mean.has_value())
        throw std::runtime_error("price: give exactly one of --strike or --mean");
    if (time.has_value() == day.has_value())
        throw std::runtime_error("price: give exactly one of --time or --day");

    const double k = strike ? *strike : fmp::strike_price(spot, *mean);
    const double t = time ? *time : fmp::time_fraction(*day, cfg);
    const fmp::PricingInputs inputs{spot, k, rate, yield, sigma, t};
    print_quote_breakdown(spot, mean, inputs, fmp::price_options(inputs));
    write_run_config(g, "price",
                     json{{"spot", spot},
                          {"strike", k},
                          {"time", t},
                          {"rate", rate},
                          {"yield", yield},
                          {"sigma", sigma}});
    return 0;
}

struct LearnerOpts {
    int lags = 1;
    int max_depth = -1;  // -1 = profile default
    double minimal_gain = 0.15;
    int min_leaf = 2;
    int cycles = 500;
    double learning_rate = 0.3;
    double momentum = 0.2;
    int hidden = 0;
    bool shuffle = false;
    int relative_members = 1;
    std::string reference = "lag1";

    void attach(CLI::App* cmd) {
        cmd->add_option("--lags", lags, "lagged closes in the feature set (default 1)");
        cmd->add_option("--max-depth", max_depth, "tree depth cap (tree 25, ensemble member 20)");
        cmd->add_option("--minimal-gain", minimal_gain,
                        "required fraction of node variance removed by a split");
        cmd->add_option("--min-leaf", min_leaf, "minimal rows per leaf");
        cmd->add_option("--cycles", cycles, "training epochs for the net");
        cmd->add_option("--learning-rate", learning_rate, "per-step weight change");
        cmd->add_option("--momentum", momentum, "fraction of the previous weight update");
        cmd->add_option("--hidden", hidden, "hidden units (0 = (inputs+1)/2 + 1)");
        cmd->add_flag("--shuffle", shuffle, "seeded row shuffle per epoch");
        cmd->add_option("--relative-members", relative_members,
                        "relative-regression members in the ensemble");
        cmd->add_option("--reference", reference, "reference feature for relative regression");
    }

    fmp::TreeParams tree_params(int default_depth) const {
        return fmp::TreeParams{max_depth > 0 ? max_depth : default_depth, minimal_gain, min_leaf};
    }
    fmp::MlpParams mlp_params(std::uint64_t seed) const {
        return fmp::MlpParams{cycles, learning_rate, momentum, seed, hidden, shuffle};
    }
    fmp::EnsembleParams ensemble_params(std::uint64_t seed) const {
        return fmp::EnsembleParams{tree_params(20), mlp_params(seed), relative_members, reference};
    }

    std::unique_ptr<fmp::Regressor> make(const std::string& kind, std::uint64_t seed) const {
        if (kind == "tree") return std::make_unique<fmp::TreeRegressor>(tree_params(25));
        if (kind == "mlp") return std::make_unique<fmp::MlpRegressor>(mlp_params(seed));
        if (kind == "ensemble")
            return std::make_unique<fmp::EnsembleRegressor>(ensemble_params(seed));
        throw std::runtime_error("unknown model kind: " + kind);
    }

    json to_json() const {
        return json{{"lags", lags},
                    {"max_depth", max_depth},
                    {"minimal_gain", minimal_gain},
                    {"min_leaf", min_leaf},
                    {"cycles", cycles},
                    {"learning_rate", learning_rate},
                    {"momentum", momentum},
                    {"hidden", hidden},
                    {"shuffle", shuffle},
                    {"relative_members", relative_members},
                    {"reference", reference}};
    }
};

void print_metrics(const fmp::MetricsVector& m) {
    std::fputs(fmp::format_performance_vector(m).c_str(), stdout);
}

fmp::MetricsVector evaluate_on(const fmp::Regressor& model, const fmp::SupervisedDataset& rows) {
    std::vector<double> predicted, actual;
    for (const auto& row : rows.rows) {
        predicted.push_back(model.predict(row.features));
        actual.push_back(row.label);
    }
    fmp::MetricsVector m = fmp::regression_metrics(predicted, actual);
    if (predicted.size() >= 2) m.trend_accuracy = fmp::trend_accuracy(predicted, actual);
    return m;
}

int cmd_train(const GlobalOpts& g, const std::string& data_path, const std::string& kind,
              const std::string& train_until, std::optional<double> ratio,
              std::string model_out, const LearnerOpts& lopts) {
    const auto series = fmp::load_price_series(data_path).series;
    const auto dataset = fmp::tabular_dataset(series, lopts.lags);

    fmp::SupervisedDataset train = dataset;
    std::optional<fmp::SupervisedDataset> heldout;
    if (!train_until.empty() && ratio)
        throw std::runtime_error("train: use --train-until or --ratio, not both");
    if (!train_until.empty()) {
        const auto cutoff = parse_date_arg(train_until);
        train.rows.clear();
        for (const auto& row : dataset.rows)
            if (row.id <= cutoff) train.rows.push_back(row);
        if (train.rows.empty())
            throw std::runtime_error("train: empty train partition before " + cutoff.iso());
    } else if (ratio) {
        auto [a, b] = fmp::split_linear(dataset, *ratio);
        train = std::move(a);
        heldout = std::move(b);
    }

    auto model = lopts.make(kind, g.seed);
    model->fit(train);

    if (model_out.empty())
        model_out = (std::filesystem::path(g.out_dir) / ("model_" + kind + ".json")).string();
    fmp::save_model(model_out, *model);
    std::printf("trained %s on %zu rows (%s .. %s)\n", kind.c_str(), train.rows.size(),
                train.rows.front().id.iso().c_str(), train.rows.back().id.iso().c_str());
    std::printf("model: %s\n", model_out.c_str());
    if (heldout) {
        std::printf("held-out rows: %zu\n", heldout->rows.size());
        print_metrics(evaluate_on(*model, *heldout));
    }
    write_run_config(g, "train",
                     json{{"data", data_path},
                          {"model", kind},
                          {"train_until", train_until},
                          {"ratio", ratio ? json(*ratio) : json(nullptr)},
                          {"model_out", model_out},
                          {"learner", lopts.to_json()}});
    return 0;
}

int cmd_evaluate(const GlobalOpts& g, const std::string& data_path, const std::string& model_path,
                 const std::string& test_month, bool sliding, const std::string& learner_kind,
                 const fmp::SlidingWindowParams& swp, const LearnerOpts& lopts) {
    const auto series = fmp::load_price_series(data_path).series;

    if (sliding) {
        const auto seed = g.seed;
        const auto result = fmp::sliding_window_validate(
            series, [&] { return lopts.make(learner_kind, seed); }, swp);
        std::printf("Prediction trend accuracy: %s +/- %s (micro average: %s)\n",
                    num(result.mean_accuracy).c_str(), num(result.std_accuracy).c_str(),
                    num(result.micro_average).c_str());
        std::printf("folds: %zu, comparisons: %zu\n", result.folds.size(),
                    result.total_comparisons);
        json folds = json::array();
        for (const auto& f : result.folds)
            folds.push_back(json{{"train_begin", f.train_begin},
                                 {"test_begin", f.test_begin},
                                 {"matches", f.matches},
                                 {"comparisons", f.comparisons},
                                 {"accuracy", f.accuracy}});
        fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "validation.json",
                               json{{"mean_accuracy", result.mean_accuracy},
                                    {"std_accuracy", result.std_accuracy},
                                    {"micro_average", result.micro_average},
                                    {"folds", std::move(folds)}}
                                       .dump(2) +
                                   "\n");
        write_run_config(g, "evaluate",
                         json{{"data", data_path},
                              {"sliding", true},
                              {"learner", learner_kind},
                              {"train_width", swp.train_width},
                              {"step", swp.step},
                              {"test_width", swp.test_width},
                              {"horizon", swp.horizon},
                              {"params", lopts.to_json()}});
        return 0;
    }

    if (model_path.empty()) throw std::runtime_error("evaluate: --model or --sliding required");
    const auto model = fmp::load_model(model_path);
    const auto dataset = fmp::tabular_dataset(series, lopts.lags);
    const auto names = fmp::model_feature_names(*model);
    if (!names.empty() && names != dataset.feature_names)
        throw std::runtime_error(
            "evaluate: model/profile mismatch: model features do not match the dataset "
            "(check --lags)");

    fmp::SupervisedDataset test;
    test.feature_names = dataset.feature_names;
    const auto month = parse_month_arg(test_month);
    for (const auto& row : dataset.rows)
        if (fmp::year_month(row.id) == month) test.rows.push_back(row);
    if (test.rows.empty())
        throw std::runtime_error("evaluate: empty test partition for " + month.str());

    const auto metrics = evaluate_on(*model, test);
    print_metrics(metrics);
    fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "evaluation.json",
                           json{{"model", model_path},
                                {"test_month", month.str()},
                                {"rows", test.rows.size()},
                                {"metrics", fmp::metrics_json(metrics)}}
                                   .dump(2) +
                               "\n");
    write_run_config(g, "evaluate",
                     json{{"data", data_path},
                          {"model", model_path},
                          {"test_month", month.str()},
                          {"lags", lopts.lags}});
    return 0;
}

int cmd_compare(const GlobalOpts& g, const std::string& data_path, const std::string& month,
                const std::vector<std::string>& model_paths, bool no_bsopm,
                const MarketOpts& mopts, const LearnerOpts& lopts) {
    const auto series = fmp::load_price_series(data_path).series;
    const auto target = parse_month_arg(month);

    std::vector<fmp::DatedSeries> predictors;
    json effective_market;
    if (!no_bsopm) {
        const auto cfg = mopts.resolve(g, series.instrument);
        const auto report = fmp::forecast_month(series, target, cfg);
        predictors.push_back(fmp::to_dated_series(report, "bsopm"));
        effective_market = config_json(cfg);
    }
    if (!model_paths.empty()) {
        const auto dataset = fmp::tabular_dataset(series, lopts.lags);
        for (const auto& path : model_paths) {
            const auto model = fmp::load_model(path);
            const auto names = fmp::model_feature_names(*model);
            if (!names.empty() && names != dataset.feature_names)
                throw std::runtime_error("compare: model/profile mismatch for " + path);
            fmp::DatedSeries ds;
            ds.name = std::filesystem::path(path).stem().string();
            for (const auto& row : dataset.rows)
                if (fmp::year_month(row.id) == target)
                    ds.points.emplace_back(row.id, model->predict(row.features));
            predictors.push_back(std::move(ds));
        }
    }
    if (predictors.empty()) throw std::runtime_error("compare: nothing to compare");

    const auto actual = fmp::slice_month(series, target);
    const auto report = fmp::comparison_report(actual, predictors);

    std::string head = "date,actual";
    for (const auto& [name, v] : report.predictors) head += "," + name;
    std::printf("%s\n", head.c_str());
    for (std::size_t i = 0; i < report.dates.size(); ++i) {
        std::string line = report.dates[i].iso() + "," + num(report.actual[i]);
        for (const auto& [name, values] : report.predictors) line += "," + num(values[i]);
        std::printf("%s\n", line.c_str());
    }
    for (const auto& [name, metrics] : report.metrics) {
        std::printf("-- %s --\n", name.c_str());
        print_metrics(metrics);
    }

    fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "comparison.csv",
                           fmp::comparison_csv(report));
    json model_names = json::array();
    for (const auto& path : model_paths)
        model_names.push_back(std::filesystem::path(path).filename().string());
    json doc = fmp::comparison_json(report);
    doc["config"] = json{{"data", std::filesystem::path(data_path).filename().string()},
                         {"month", target.str()},
                         {"market", effective_market},
                         {"models", std::move(model_names)}};
    fmp::write_file_atomic(std::filesystem::path(g.out_dir) / "comparison.json",
                           doc.dump(2) + "\n");
    write_run_config(g, "compare",
                     json{{"data", data_path},
                          {"month", target.str()},
                          {"models", model_paths},
                          {"bsopm", !no_bsopm}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frontier-market close-price forecasting: modified option-pricing "
                 "parameters, from-scratch baselines, evaluation reports"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "key=value market config file");
    app.add_option("--seed", g.seed, "seed for all stochastic components");
    app.add_option("--out-dir", g.out_dir, "directory for report files");

    auto* ingest = app.add_subcommand("ingest", "validate a data file and emit canonical CSV");
    std::string in_data, in_instrument;
    fmp::CsvSchema schema;
    ingest->add_option("--data", in_data, "OHLCV delimited text file")->required();
    ingest->add_option("--instrument", in_instrument, "instrument name (default: file stem)");
    ingest->add_option("--date-column", schema.date, "header name for the date column");
    ingest->add_option("--open-column", schema.open, "header name for the open column");
    ingest->add_option("--high-column", schema.high, "header name for the high column");
    ingest->add_option("--low-column", schema.low, "header name for the low column");
    ingest->add_option("--close-column", schema.close, "header name for the close column");
    ingest->add_option("--volume-column", schema.volume, "header name for the volume column");

    auto* volatility = app.add_subcommand("volatility", "trailing 12-month dispersion ledger");
    std::string vol_data, vol_month;
    bool vol_trend = false;
    int vol_window = 6;
    double vol_ratio = 2.0;
    volatility->add_option("--data", vol_data)->required();
    volatility->add_option("--month", vol_month, "target month YYYY-MM")->required();
    volatility->add_flag("--trend", vol_trend, "also flag volatility spikes");
    volatility->add_option("--trend-window", vol_window, "trailing months in the spike baseline");
    volatility->add_option("--spike-ratio", vol_ratio, "flag threshold over the trailing mean");

    auto* forecast = app.add_subcommand("forecast", "month-ahead close-price forecast");
    std::string fc_data, fc_month, fc_explain;
    int fc_horizon = 1;
    MarketOpts fc_market;
    forecast->add_option("--data", fc_data)->required();
    forecast->add_option("--month", fc_month, "first target month YYYY-MM")->required();
    forecast->add_option("--horizon", fc_horizon, "months to chain (predictions feed forward)");
    forecast->add_option("--explain", fc_explain, "print the full breakdown for one date");
    fc_market.attach(forecast);

    auto* price = app.add_subcommand("price", "one-shot call/put quote");
    double pr_spot = 0.0, pr_rate = 0.0, pr_yield = 0.0, pr_sigma = 0.0;
    std::optional<double> pr_strike, pr_mean, pr_time;
    std::optional<int> pr_day;
    int pr_year_length = 261;
    std::string pr_rounding = "round3";
    price->add_option("--spot", pr_spot, "current stock price S")->required();
    price->add_option("--strike", pr_strike, "strike K");
    price->add_option("--mean", pr_mean, "mean daily log change (derives K = S e^mean)");
    price->add_option("--time", pr_time, "time fraction T");
    price->add_option("--day", pr_day, "trading-day ordinal (derives T = day / year_length)");
    price->add_option("--r", pr_rate, "risk-free rate");
    price->add_option("--q", pr_yield, "dividend yield");
    price->add_option("--sigma", pr_sigma, "volatility (raw price units)")->required();
    price->add_option("--year-length", pr_year_length, "trading days per year");
    price->add_option("--rounding", pr_rounding)->check(CLI::IsMember({"exact", "round3"}));

    auto* train = app.add_subcommand("train", "fit a baseline model");
    std::string tr_data, tr_kind, tr_until, tr_out;
    std::optional<double> tr_ratio;
    LearnerOpts tr_learner;
    train->add_option("--data", tr_data)->required();
    train->add_option("--model", tr_kind, "tree|mlp|ensemble")
        ->required()
        ->check(CLI::IsMember({"tree", "mlp", "ensemble"}));
    train->add_option("--train-until", tr_until, "train on rows up to this date inclusive");
    train->add_option("--ratio", tr_ratio, "linear train fraction (prints held-out metrics)");
    train->add_option("--model-out", tr_out, "model file path");
    tr_learner.attach(train);

    auto* evaluate = app.add_subcommand("evaluate", "score a model or run walk-forward folds");
    std::string ev_data, ev_model, ev_month, ev_learner = "mlp";
    bool ev_sliding = false;
    fmp::SlidingWindowParams swp;
    LearnerOpts ev_lopts;
    evaluate->add_option("--data", ev_data)->required();
    evaluate->add_option("--model", ev_model, "fitted model file");
    evaluate->add_option("--test-month", ev_month, "score on this month's rows");
    evaluate->add_flag("--sliding", ev_sliding, "sliding-window validation over the series");
    evaluate->add_option("--learner", ev_learner, "tree|mlp|ensemble for --sliding")
        ->check(CLI::IsMember({"tree", "mlp", "ensemble"}));
    evaluate->add_option("--train-width", swp.train_width, "training examples per fold");
    evaluate->add_option("--step", swp.step, "fold advance");
    evaluate->add_option("--test-width", swp.test_width, "test examples per fold");
    evaluate->add_option("--horizon", swp.horizon, "last training to first test example");
    ev_lopts.attach(evaluate);

    auto* compare = app.add_subcommand("compare", "actual vs forecast vs model predictions");
    std::string cp_data, cp_month;
    std::vector<std::string> cp_models;
    bool cp_no_bsopm = false;
    MarketOpts cp_market;
    LearnerOpts cp_lopts;
    compare->add_option("--data", cp_data)->required();
    compare->add_option("--month", cp_month, "target month YYYY-MM")->required();
    compare->add_option("--model", cp_models, "fitted model file (repeatable)");
    compare->add_flag("--no-bsopm", cp_no_bsopm, "skip the pricing-formula forecast column");
    cp_market.attach(compare);
    cp_lopts.attach(compare);

    for (CLI::App* sub : {ingest, volatility, forecast, price, train, evaluate, compare})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) return cmd_ingest(g, in_data, in_instrument, schema);
        if (*volatility)
            return cmd_volatility(g, vol_data, vol_month, vol_trend, vol_window, vol_ratio);
        if (*forecast) return cmd_forecast(g, fc_data, fc_month, fc_horizon, fc_market, fc_explain);
        if (*price)
            return cmd_price(g, pr_spot, pr_strike, pr_mean, pr_time, pr_day, pr_rate, pr_yield,
                             pr_sigma, pr_year_length, pr_rounding);
        if (*train) return cmd_train(g, tr_data, tr_kind, tr_until, tr_ratio, tr_out, tr_learner);
        if (*evaluate)
            return cmd_evaluate(g, ev_data, ev_model, ev_month, ev_sliding, ev_learner, swp,
                                ev_lopts);
        if (*compare)
            return cmd_compare(g, cp_data, cp_month, cp_models, cp_no_bsopm, cp_market, cp_lopts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
