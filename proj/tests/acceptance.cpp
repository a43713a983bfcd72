// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// anything fails. Each criterion pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fmp/forecast.hpp"
#include "fmp/io.hpp"
#include "fmp/market_data.hpp"
#include "fmp/metrics.hpp"
#include "fmp/ml/dataset.hpp"
#include "fmp/ml/ensemble.hpp"
#include "fmp/ml/linear.hpp"
#include "fmp/ml/mlp.hpp"
#include "fmp/ml/model.hpp"
#include "fmp/ml/tree.hpp"
#include "fmp/ml/validate.hpp"
#include "fmp/parameters.hpp"
#include "fmp/pricing.hpp"
#include "oracles.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string label;
    std::function<void(std::string&)> run;  // throws or appends to the failure note
};

void require(bool ok, const std::string& what, std::string& failures) {
    if (!ok) failures += (failures.empty() ? "" : "; ") + what;
}

std::string run_cli(const std::string& args, int& exit_code) {
    static int counter = 0;
    const fs::path log =
        fs::temp_directory_path() / ("fmp_acceptance_" + std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(FMP_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(log);
    std::ostringstream ss;
    ss << in.rdbuf();
    fs::remove(log);
    return ss.str();
}

std::map<std::string, double> parse_breakdown(const std::string& text) {
    std::map<std::string, double> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string key, value;
        if (!(fields >> key >> value)) continue;
        if (auto v = fmp::parse_double(value)) out[key] = *v;
    }
    return out;
}

fs::path data_dir() { return fs::path(FMP_DATA_DIR); }

const fmp::PriceSeries& sample_series() {
    static const fmp::PriceSeries series =
        fmp::load_price_series(data_dir() / "afi_sample.csv", {}, "AFI").series;
    return series;
}

// A seeded lognormal random walk, 500 trading days.
fmp::PriceSeries random_walk_series(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    fmp::PriceSeries series;
    series.instrument = "walk";
    double close = 100.0;
    fmp::Date date{2014, 1, 1};
    int made = 0;
    while (made < 500) {
        date = fmp::Date::from_serial(date.serial() + 1);
        if (date.weekday() >= 5) continue;
        const double shock = (uniform() - 0.5) * 0.03 + (uniform() - 0.5) * 0.01;
        close *= std::exp(shock);
        const double open = close * (1.0 + (uniform() - 0.5) * 0.004);
        const double high = std::max(open, close) * (1.0 + uniform() * 0.003);
        const double low = std::min(open, close) * (1.0 - uniform() * 0.003);
        series.bars.push_back(
            fmp::PriceBar{date, open, high, low, close, 1000.0 + std::floor(uniform() * 5000.0)});
        ++made;
    }
    return series;
}

// ---------------------------------------------------------------------
// Criteria
// ---------------------------------------------------------------------

void criterion_1_table8_golden(std::string& failures) {
    const auto start = Clock::now();
    int exit_code = 0;
    const auto out = run_cli(
        "price --spot 329.5 --mean 0.001640969 --time 0.164 --r 0.0248 --q 0.0589 "
        "--sigma 56.864 --out-dir " +
            (fs::temp_directory_path() / "fmp_acc_price").string(),
        exit_code);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    require(exit_code == 0, "price exited " + std::to_string(exit_code), failures);
    const auto v = parse_breakdown(out);
    auto close_to = [&](const char* key, double want, double tol) {
        const auto it = v.find(key);
        if (it == v.end()) {
            require(false, std::string("missing ") + key, failures);
            return;
        }
        require(std::abs(it->second - want) < tol,
                std::string(key) + "=" + fmp::format_double(it->second), failures);
    };
    close_to("strike", 330.0411432, 1e-6);
    close_to("d1", 11.51376833, 1e-6);
    close_to("d2", -11.51439655, 1e-6);
    close_to("call", 326.3324849, 1e-4);
    close_to("put", 328.7015259, 1e-4);
    close_to("predicted_close", 327.5170054, 1e-4);
    require(seconds < 1.0, "runtime " + std::to_string(seconds) + "s", failures);
}

void criterion_2_table7_drift(std::string& failures) {
    const auto fixture = fmp::load_price_series(data_dir() / "afi_feb2016.csv").series;
    require(fixture.size() == 22, "fixture has " + std::to_string(fixture.size()) + " bars",
            failures);
    const auto stats = fmp::daily_log_returns(fixture);
    const double mean = fmp::mean_drift(stats.entries);
    require(std::abs(mean - 0.001640969) < 1e-9, "mean=" + fmp::format_double(mean), failures);
}

void criterion_3_table9_volatility(std::string& failures) {
    const double listed[12] = {6.464, 7.429, 8.472, 5.543, 1.586, 2.502,
                               1.451, 3.499, 4.566, 3.738, 7.871, 3.743};
    double sum = 0.0;
    for (double s : listed) sum += s;
    require(std::abs(sum - 56.864) < 1e-12, "sum=" + fmp::format_double(sum), failures);

    // The ledger's stored sum must be the accumulation of its entries.
    const auto ledger = fmp::annual_volatility(sample_series(), fmp::YearMonth{2016, 3});
    double accumulated = 0.0;
    for (const auto& m : ledger.months) accumulated += m.sigma;
    require(ledger.sigma_annual == accumulated, "ledger sum is not the stored accumulation",
            failures);

    const auto fixture = fmp::load_price_series(data_dir() / "afi_feb2016.csv").series;
    const double feb = fmp::monthly_std(fmp::slice_month(fixture, fmp::YearMonth{2016, 2}));
    require(std::abs(feb - 3.743) < 5e-3, "feb std=" + fmp::format_double(feb), failures);
}

void criterion_4_time_fraction(std::string& failures) {
    fmp::MarketConfig round3;
    require(fmp::time_fraction(43, round3) == 0.164,
            "round3=" + fmp::format_double(fmp::time_fraction(43, round3)), failures);
    fmp::MarketConfig exact;
    exact.time_rounding = fmp::TimeRounding::Exact;
    const double t = fmp::time_fraction(43, exact);
    require(std::abs(t - 0.164750958) < 1e-9, "exact=" + fmp::format_double(t), failures);
}

void criterion_5_put_call_parity(std::string& failures) {
    const auto start = Clock::now();
    std::mt19937_64 rng(20160301);
    auto uniform = [&](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    for (int i = 0; i < 1000; ++i) {
        const fmp::PricingInputs in{uniform(1.0, 1000.0), uniform(1.0, 1000.0),
                                    uniform(0.0, 0.2),    uniform(0.0, 0.2),
                                    uniform(0.05, 100.0), uniform(0.01, 2.0)};
        const auto q = fmp::price_options(in);
        const double parity =
            in.spot * std::exp(-in.yield * in.time) - in.strike * std::exp(-in.rate * in.time);
        if (std::abs(q.call - q.put - parity) >= 1e-9 * in.spot) {
            require(false, "parity violated at draw " + std::to_string(i), failures);
            return;
        }
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    require(seconds < 1.0, "runtime " + std::to_string(seconds) + "s", failures);
}

void criterion_6_normal_cdf(std::string& failures) {
    const fmptest::CdfOracle oracle;
    double worst = 0.0;
    for (int i = -800; i <= 800; ++i) {  // 1601 points on [-8, 8]
        const double x = static_cast<double>(i) / 100.0;
        worst = std::max(worst, std::abs(fmp::std_normal_cdf(x) - oracle(x)));
    }
    require(worst < 1e-8, "max deviation " + fmp::format_double(worst), failures);
}

void criterion_7_tree_oracle(std::string& failures) {
    std::mt19937_64 rng(20250815);
    fmp::TreeParams params;
    params.max_depth = 2;
    for (int trial = 0; trial < 50; ++trial) {
        const auto data = fmptest::random_tree_dataset(rng);
        const auto model = fmp::fit_tree(data, params);
        std::vector<std::size_t> rows(data.size());
        for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
        const auto reference = fmptest::brute_grow(data, rows, 0, params);
        if (!fmptest::trees_identical(*model.root, *reference)) {
            require(false, "mismatch on dataset " + std::to_string(trial), failures);
            return;
        }
    }
}

void criterion_8_mlp_gradient(std::string& failures) {
    std::mt19937_64 rng(99);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 20; ++trial) {
        fmp::SupervisedDataset data;
        const std::size_t nf = 1 + trial % 4;
        for (std::size_t f = 0; f < nf; ++f) data.feature_names.push_back("f" + std::to_string(f));
        for (int i = 0; i < 3; ++i) {
            fmp::DataRow row;
            row.id = fmp::Date{2016, 1, 1};
            for (std::size_t f = 0; f < nf; ++f) row.features.push_back(uniform() * 10.0);
            row.label = uniform() * 5.0;
            data.rows.push_back(std::move(row));
        }
        fmp::MlpParams params;
        params.cycles = trial % 3 == 0 ? 0 : 10;
        params.seed = 7000 + static_cast<std::uint64_t>(trial);
        params.hidden_size = 1 + trial % 5;
        const auto model = fmp::fit_mlp(data, params);
        const double err = fmptest::max_rel_gradient_error(model, data);
        if (err >= 1e-4) {
            require(false, "config " + std::to_string(trial) + " err " + fmp::format_double(err),
                    failures);
            return;
        }
    }
}

void criterion_9_ensemble_mean(std::string& failures) {
    std::mt19937_64 rng(31);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    fmp::SupervisedDataset data;
    data.feature_names = {"open", "high", "low", "volume", "lag1"};
    for (int i = 0; i < 60; ++i) {
        const double c = 100.0 + uniform() * 40.0;
        data.rows.push_back(fmp::DataRow{fmp::Date{2016, 1, 1},
                                         {c - uniform(), c + uniform(), c - 2.0 * uniform(),
                                          800.0 + uniform() * 50.0, c - 0.3 * uniform()},
                                         c + uniform()});
    }
    fmp::EnsembleParams ep;
    ep.mlp.cycles = 25;
    ep.mlp.seed = 11;
    fmp::EnsembleRegressor committee(ep);
    committee.fit(data);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> row{100.0 + uniform() * 40.0, 141.0, 99.0, 820.0,
                                100.0 + uniform() * 40.0};
        row[1] = row[0] + 1.0;
        row[2] = row[0] - 1.0;
        double mean = 0.0;
        for (const auto& member : committee.members()) mean += member->predict(row);
        mean /= static_cast<double>(committee.members().size());
        const double vote = fmp::ensemble_predict(committee, row);
        if (std::abs(vote - mean) > 1e-12) {
            require(false, "vote differs from mean by " + fmp::format_double(vote - mean),
                    failures);
            return;
        }
    }
}

void criterion_10_metric_formulas(std::string& failures) {
    const std::vector<double> predicted{2.0, 4.0}, actual{1.0, 2.0};
    const auto m = fmp::regression_metrics(predicted, actual);
    require(std::abs(m.rmse - std::sqrt(2.5)) < 1e-12, "rmse", failures);
    require(std::abs(m.absolute_error.mean - 1.5) < 1e-12, "abs mean", failures);
    require(std::abs(m.relative_error_pct.mean - 100.0) < 1e-12, "rel mean", failures);
    require(std::abs(m.squared_error.mean - 2.5) < 1e-12, "sq mean", failures);

    const std::vector<double> a{1.0, 2.0, 1.0, 3.0}, p{0.0, 3.0, 2.0, 2.0};
    const double trend = fmp::trend_accuracy(p, a);
    require(std::abs(trend - 2.0 / 3.0) < 1e-15, "trend=" + fmp::format_double(trend), failures);

    std::mt19937_64 rng(17);
    auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<double> ra, rp;
    for (int i = 0; i < 100; ++i) {
        ra.push_back(50.0 + uniform() * 100.0);
        rp.push_back(ra.back() + (uniform() - 0.5) * 10.0);
    }
    const auto rm = fmp::regression_metrics(rp, ra);
    require(std::abs(rm.rmse * rm.rmse - rm.squared_error.mean) <=
                1e-12 * rm.squared_error.mean,
            "rmse^2 != mean squared error", failures);
    require(rm.correlation && rm.squared_correlation, "correlation missing", failures);
    if (rm.correlation)
        require(std::abs(*rm.squared_correlation - *rm.correlation * *rm.correlation) <= 1e-12,
                "r^2 != correlation^2", failures);
}

void criterion_11_non_reproduction_substitute(std::string& failures) {
    // The published model-performance tables hinge on proprietary data
    // and closed-source training internals; this is the substitute
    // property gate, not a reproduction.
    const auto series = random_walk_series(424242);

    // (a) standalone tree beats 2x the previous-close naive baseline.
    const auto dataset = fmp::tabular_dataset(series, 1);
    const auto [train, test] = fmp::split_linear(dataset, 0.6);
    fmp::TreeModel tree = fmp::fit_tree(train, fmp::TreeParams{});
    const int lag_index = dataset.feature_index("lag1");
    std::vector<double> tree_pred, naive_pred, actual;
    for (const auto& row : test.rows) {
        tree_pred.push_back(tree.predict(row.features));
        naive_pred.push_back(row.features[static_cast<std::size_t>(lag_index)]);
        actual.push_back(row.label);
    }
    const auto tree_m = fmp::regression_metrics(tree_pred, actual);
    const auto naive_m = fmp::regression_metrics(naive_pred, actual);
    require(std::isfinite(tree_m.relative_error_pct.mean), "tree relative error not finite",
            failures);
    require(tree_m.relative_error_pct.mean < 2.0 * naive_m.relative_error_pct.mean,
            "tree rel err " + fmp::format_double(tree_m.relative_error_pct.mean) + " vs naive " +
                fmp::format_double(naive_m.relative_error_pct.mean),
            failures);

    // (b) sliding-window validation: bounded accuracy, pooled average
    // equals the comparison-weighted fold mean.
    const auto result = fmp::sliding_window_validate(
        series, [] { return std::make_unique<fmp::MlpRegressor>(fmp::MlpParams{
                        .cycles = 50, .seed = 3}); });
    require(result.micro_average >= 0.0 && result.micro_average <= 1.0, "micro out of range",
            failures);
    double weighted = 0.0;
    std::size_t total = 0;
    for (const auto& fold : result.folds) {
        weighted += fold.accuracy * static_cast<double>(fold.comparisons);
        total += fold.comparisons;
    }
    require(std::abs(result.micro_average - weighted / static_cast<double>(total)) < 1e-12,
            "micro != weighted fold mean", failures);

    // (c) every baseline invariant, on the same series.
    // Tree training error non-increasing in depth.
    double prev_sse = std::numeric_limits<double>::infinity();
    for (int depth : {0, 2, 4, 8}) {
        fmp::TreeParams p;
        p.max_depth = depth;
        p.minimal_gain = 0.01;
        const auto model = fmp::fit_tree(train, p);
        double sse = 0.0;
        for (const auto& row : train.rows) {
            const double e = model.predict(row.features) - row.label;
            sse += e * e;
        }
        require(sse <= prev_sse + 1e-9, "tree training error grew with depth", failures);
        prev_sse = sse;
    }

    // Pure leaves predict their training label exactly. Coarse labels
    // force duplicates, so deep growth produces pure leaves.
    {
        fmp::SupervisedDataset coarse = train;
        for (auto& row : coarse.rows) row.label = std::floor(row.label / 5.0) * 5.0;
        fmp::TreeParams p;
        p.max_depth = 30;
        p.minimal_gain = 0.0;
        p.minimal_leaf_size = 1;
        const auto model = fmp::fit_tree(coarse, p);
        std::function<void(const fmp::TreeNode&, std::vector<std::size_t>)> walk =
            [&](const fmp::TreeNode& node, std::vector<std::size_t> rows) {
                if (node.is_leaf()) {
                    bool pure = true;
                    for (std::size_t i : rows)
                        pure = pure && coarse.rows[i].label == coarse.rows[rows[0]].label;
                    if (pure && !rows.empty() && node.value != coarse.rows[rows[0]].label)
                        require(false, "pure leaf does not predict its label", failures);
                    return;
                }
                std::vector<std::size_t> l, r;
                for (std::size_t i : rows)
                    (coarse.rows[i].features[static_cast<std::size_t>(node.feature)] <=
                             node.threshold
                         ? l
                         : r)
                        .push_back(i);
                walk(*node.left, std::move(l));
                walk(*node.right, std::move(r));
            };
        std::vector<std::size_t> all(coarse.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        walk(*model.root, all);
    }

    // Net refits are bit-deterministic for a fixed seed.
    const auto mlp_a = fmp::fit_mlp(train, fmp::MlpParams{.cycles = 20, .seed = 5});
    const auto mlp_b = fmp::fit_mlp(train, fmp::MlpParams{.cycles = 20, .seed = 5});
    for (const auto& row : test.rows)
        if (mlp_a.predict(row.features) != mlp_b.predict(row.features)) {
            require(false, "net refit is not bit-deterministic", failures);
            break;
        }

    // The vote is permutation-invariant and bounded by its members.
    {
        fmp::EnsembleParams ep;
        ep.mlp.cycles = 10;
        ep.mlp.seed = 21;
        fmp::EnsembleRegressor committee(ep);
        committee.fit(train);
        const auto& probe = test.rows.front().features;
        std::vector<double> member_out;
        for (const auto& member : committee.members())
            member_out.push_back(member->predict(probe));
        double fwd = 0.0, bwd = 0.0;
        for (double v : member_out) fwd += v;
        for (auto it = member_out.rbegin(); it != member_out.rend(); ++it) bwd += *it;
        fwd /= static_cast<double>(member_out.size());
        bwd /= static_cast<double>(member_out.size());
        const double vote = fmp::ensemble_predict(committee, probe);
        require(std::abs(vote - fwd) <= 1e-12 && std::abs(vote - bwd) <= 1e-12,
                "vote depends on member order", failures);
        const double lo = *std::min_element(member_out.begin(), member_out.end());
        const double hi = *std::max_element(member_out.begin(), member_out.end());
        require(vote >= lo - 1e-12 && vote <= hi + 1e-12, "vote outside member range", failures);
    }

    // Windowize + linear split: every training label predates every test
    // label.
    {
        const auto examples = fmp::windowize(series, 1, 1, 1);
        const auto [wtrain, wtest] = fmp::split_linear(examples, 0.6);
        require(wtrain.rows.back().id < wtest.rows.front().id, "windowed split leaks", failures);
    }

    // Relative regression on an identity label has zero residuals.
    fmp::SupervisedDataset self = train;
    for (auto& row : self.rows) row.label = row.features[static_cast<std::size_t>(lag_index)];
    const auto rel_self = fmp::fit_relative_regression(self, "lag1");
    for (const auto& row : self.rows) {
        if (std::abs(rel_self.predict(row.features) - row.label) >
            1e-12 * std::abs(row.label)) {
            require(false, "relative regression residual on identity label", failures);
            break;
        }
    }
}

void criterion_12_determinism(std::string& failures) {
    const fs::path base = fs::temp_directory_path() / "fmp_acc_determinism";
    fs::remove_all(base);
    const std::string data = (data_dir() / "afi_sample.csv").string();
    for (const char* run : {"run1", "run2"}) {
        const std::string out = (base / run).string();
        int code = 0;
        run_cli("ingest --data " + data + " --instrument AFI --seed 7 --out-dir " + out, code);
        require(code == 0, std::string(run) + " ingest failed", failures);
        run_cli("forecast --data " + data +
                    " --instrument AFI --month 2016-03 --horizon 2 --seed 7 --out-dir " + out,
                code);
        require(code == 0, std::string(run) + " forecast failed", failures);
        run_cli("train --data " + data +
                    " --model ensemble --ratio 0.6 --cycles 50 --seed 7 --out-dir " + out,
                code);
        require(code == 0, std::string(run) + " train failed", failures);
        run_cli("compare --data " + data + " --instrument AFI --month 2016-03 --model " +
                    (base / run / "model_ensemble.json").string() + " --seed 7 --out-dir " + out,
                code);
        require(code == 0, std::string(run) + " compare failed", failures);
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(base / "run1")) {
        const auto name = entry.path().filename();
        // The config echo quotes the --out-dir flag, which differs between
        // the two runs by construction; every report body must match.
        if (name == "run_config.json") continue;
        const auto other = base / "run2" / name;
        if (!fs::exists(other)) {
            require(false, "missing in run2: " + name.string(), failures);
            continue;
        }
        if (fmp::read_file(entry.path()) != fmp::read_file(other))
            require(false, "differs: " + name.string(), failures);
        ++compared;
    }
    require(compared >= 8, "only " + std::to_string(compared) + " files compared", failures);
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "golden quote reproduction through the cli (runtime < 1s)", criterion_1_table8_golden},
        {2, "February drift 0.001640969 +/- 1e-9 from the listed closes", criterion_2_table7_drift},
        {3, "twelve-month volatility ledger: sum 56.864, February 3.743 +/- 5e-3",
         criterion_3_table9_volatility},
        {4, "time fraction 43/261: 0.164 truncated, 0.164750958 exact", criterion_4_time_fraction},
        {5, "put-call parity on 1000 seeded draws (< 1e-9*S, runtime < 1s)",
         criterion_5_put_call_parity},
        {6, "normal CDF within 1e-8 of the integration oracle on 1601 grid points",
         criterion_6_normal_cdf},
        {7, "tree growth identical to the exhaustive split search on 50 seeded datasets",
         criterion_7_tree_oracle},
        {8, "backprop gradients within 1e-4 of central differences on 20 seeded configs",
         criterion_8_mlp_gradient},
        {9, "ensemble vote equals the member mean to 1e-12 on 100 rows",
         criterion_9_ensemble_mean},
        {10, "metric formulas match hand-computed values and internal identities",
         criterion_10_metric_formulas},
        {11, "substitute property gate on a seeded random walk (published model scores "
             "rest on proprietary feeds and closed tooling; explicitly not a reproduction)",
         criterion_11_non_reproduction_substitute},
        {12, "two identically seeded pipeline runs produce byte-identical reports",
         criterion_12_determinism},
    };

    int failed = 0;
    for (const auto& criterion : criteria) {
        std::string failures;
        try {
            criterion.run(failures);
        } catch (const std::exception& e) {
            failures += (failures.empty() ? "" : "; ") + std::string("exception: ") + e.what();
        }
        if (failures.empty()) {
            std::printf("PASS %2d: %s\n", criterion.id, criterion.label.c_str());
        } else {
            std::printf("FAIL %2d: %s [%s]\n", criterion.id, criterion.label.c_str(),
                        failures.c_str());
            ++failed;
        }
    }
    if (failed > 0) std::printf("%d criterion(s) failed\n", failed);
    return failed == 0 ? 0 : 1;
}
