// Command-line surface: data generation, single backtests, searches, the
// reference frontier, full experiments, and indicator/statistics utilities.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pardensur/bench/artifacts.hpp"
#include "pardensur/bench/configfile.hpp"
#include "pardensur/bench/experiment.hpp"
#include "pardensur/common/parallel.hpp"
#include "pardensur/moo/indicators.hpp"

namespace {

using namespace pardensur;

struct CommonOpts {
    std::uint64_t seed = 1000;
    long budget = 510;
    std::size_t pop = 60;
    std::size_t offspring = 30;
    std::string method = "nsga2";
    std::string acceptance = "";
    std::string lookahead = "";
    int horizon = 2;
    std::string data;
    std::string out = "out";
    std::uint64_t eval_seed = 7;
    std::size_t assets = 10;
    std::size_t days = 750;
    std::uint64_t data_seed = 42;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--seed", o.seed, "Run seed");
    cmd->add_option("--budget", o.budget, "Simulator evaluation budget");
    cmd->add_option("--pop", o.pop, "Population size");
    cmd->add_option("--offspring", o.offspring, "Offspring batch size");
    cmd->add_option("--method", o.method, "Search method")
        ->check(CLI::IsMember({"nsga2", "rnsga2", "pardensur-plain", "pardensur-acceptance",
                               "pardensur-lookahead", "pardensur-both", "random-search",
                               "grid-search"}));
    cmd->add_option("--acceptance", o.acceptance, "Acceptance sampling on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--lookahead", o.lookahead, "Look-ahead on|off")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--horizon", o.horizon, "Planning horizon H");
    cmd->add_option("--data", o.data, "Market data CSV (omit for synthetic)");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--eval-seed", o.eval_seed, "Forecast noise seed");
    cmd->add_option("--assets", o.assets, "Synthetic market: asset count");
    cmd->add_option("--days", o.days, "Synthetic market: day count");
    cmd->add_option("--data-seed", o.data_seed, "Synthetic market: seed");
}

bench::ExperimentSpec spec_from(const CommonOpts& o) {
    bench::ExperimentSpec spec;
    spec.base_seed = o.seed;
    spec.evaluation_seed = o.eval_seed;
    spec.search.budget = o.budget;
    spec.search.population = o.pop;
    spec.search.offspring = o.offspring;
    spec.backtest.horizon = o.horizon;
    spec.csv_path = o.data;
    spec.synthetic.assets = o.assets;
    spec.synthetic.days = o.days;
    spec.synthetic.seed = o.data_seed;
    spec.out_dir = o.out;
    return spec;
}

bt::MarketData data_for(const bench::ExperimentSpec& spec) {
    if (!spec.csv_path.empty()) return bt::load_csv(spec.csv_path);
    return bt::gen_synthetic(spec.synthetic.assets, spec.synthetic.days, spec.synthetic.seed,
                             spec.synthetic.market);
}

int cmd_gen_data(const CommonOpts& o, const std::string& out_file, double drift_lo,
                 double drift_hi, double vol_lo, double vol_hi, double corr) {
    bt::SyntheticSpec s;
    s.drift_lo = drift_lo;
    s.drift_hi = drift_hi;
    s.vol_lo = vol_lo;
    s.vol_hi = vol_hi;
    s.correlation = corr;
    const auto md = bt::gen_synthetic(o.assets, o.days, o.data_seed, s);
    bt::save_csv(md, out_file);
    std::printf("wrote %zu assets x %zu days to %s\n", md.n_assets(), md.days(), out_file.c_str());
    return 0;
}

int cmd_backtest(const CommonOpts& o, const std::vector<double>& genes, double noise_scale) {
    auto spec = spec_from(o);
    spec.backtest.noise_scale = noise_scale;
    const auto data = data_for(spec);
    const bt::Backtester backtester(data, spec.backtest, spec.costs, spec.constraints,
                                    spec.evaluation_seed);
    const auto params = bt::decode_hyperparams(evo::Candidate{genes}, spec.boxes);
    const auto result = backtester.evaluate(params);
    std::printf("gamma_risk=%.6g gamma_trade=%.6g gamma_hold=%.6g\n", params.gamma_risk,
                params.gamma_trade, params.gamma_hold);
    std::printf("risk_pct=%.6f return_pct=%.6f days=%zu\n", result.objectives.risk_pct,
                result.objectives.return_pct, result.daily_returns.size());
    return 0;
}

int cmd_search(const CommonOpts& o) {
    auto spec = spec_from(o);
    auto method = bench::method_from_string(o.method);
    const auto data = data_for(spec);
    const bt::Backtester backtester(data, spec.backtest, spec.costs, spec.constraints,
                                    spec.evaluation_seed);
    auto evaluator = bench::make_evaluator(backtester, spec.boxes, 0);

    // Explicit flags override the method's defaults.
    if (!o.acceptance.empty() || !o.lookahead.empty()) {
        const bool acc = o.acceptance == "on";
        const bool look = o.lookahead == "on";
        if (acc && look) method = bench::Method::pardensur_both;
        else if (acc) method = bench::Method::pardensur_acceptance;
        else if (look) method = bench::Method::pardensur_lookahead;
        else method = bench::Method::pardensur_plain;
    }
    const auto run = bench::dispatch_method(method, spec, o.seed, evaluator);

    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    bench::write_frontier_csv((fs::path(spec.out_dir) / "frontier.csv").string(), run.pareto);
    bench::write_history_csv((fs::path(spec.out_dir) / "history.csv").string(), run.history);
    nlohmann::ordered_json j;
    j["version"] = bench::version_string();
    j["method"] = bench::to_string(method);
    j["seed"] = o.seed;
    j["evaluations"] = run.archive.size();
    j["frontier_size"] = run.pareto.size();
    j["hv"] = moo::hypervolume(run.pareto, spec.search.hv_ref);
    std::ofstream out((fs::path(spec.out_dir) / "summary.json").string());
    out << j.dump(2) << '\n';
    std::printf("%s seed=%llu evaluations=%zu frontier=%zu hv=%.6f\n",
                bench::to_string(method).c_str(), static_cast<unsigned long long>(o.seed),
                run.archive.size(), run.pareto.size(), j["hv"].get<double>());
    return 0;
}

int cmd_reference(const CommonOpts& o, long count) {
    auto spec = spec_from(o);
    const auto data = data_for(spec);
    const bt::Backtester backtester(data, spec.backtest, spec.costs, spec.constraints,
                                    spec.evaluation_seed);
    auto evaluator = bench::make_evaluator(backtester, spec.boxes, 0);
    Rng rng(derive_seed(o.seed, 0x726566));
    const auto archive = bench::random_search(count, 3, evaluator, rng);
    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    const auto frontier = bench::round_frontier(archive.pareto());
    bench::write_frontier_csv((fs::path(spec.out_dir) / "reference_frontier.csv").string(),
                              frontier);
    std::printf("reference: %ld evaluations, frontier=%zu, hv=%.6f\n", count, frontier.size(),
                moo::hypervolume(frontier, spec.search.hv_ref));
    return 0;
}

int cmd_experiment(const CommonOpts& o, const std::string& config_path,
                   const std::vector<std::string>& methods, int repeats, long reference_count) {
    auto spec = spec_from(o);
    if (!config_path.empty()) bench::apply_config(bench::ConfigFile::parse_file(config_path), spec);
    // CLI flags override config values.
    spec.out_dir = o.out;
    if (!methods.empty()) {
        spec.methods.clear();
        for (const auto& m : methods) spec.methods.push_back(bench::method_from_string(m));
    }
    if (repeats > 0) spec.repeats = repeats;
    if (reference_count > 0) spec.reference_evaluations = reference_count;
    const auto result = bench::run_experiment(spec);
    std::printf("experiment complete: %zu runs, reference hv=%.6f, outputs in %s\n",
                result.runs.size(), result.reference_hv, spec.out_dir.c_str());
    for (const auto& e : result.stats.entries)
        std::printf("  %s: %s vs %s (%s) p=%.6g adj=%.6g\n", e.indicator.c_str(),
                    bench::to_string(e.a).c_str(), bench::to_string(e.b).c_str(),
                    e.direction.c_str(), e.p_raw, e.p_adjusted);
    return 0;
}

int cmd_metrics(const std::string& frontier_path, const std::string& reference_path,
                double ref_risk, double ref_return) {
    const auto frontier = bench::read_frontier_csv(frontier_path);
    const auto reference = bench::read_frontier_csv(reference_path);
    const moo::ObjectivePoint ref{ref_risk, ref_return};
    std::printf("gd_plus=%.6f igd_plus=%.6f hv=%.6f\n", moo::gd_plus(frontier, reference),
                moo::igd_plus(frontier, reference), moo::hypervolume(frontier, ref));
    return 0;
}

int cmd_stats(const std::string& indicators_path, const std::string& out_path) {
    const auto runs = bench::read_indicators_csv(indicators_path);
    std::vector<bench::Method> methods;
    for (const auto& r : runs)
        if (std::find(methods.begin(), methods.end(), r.method) == methods.end())
            methods.push_back(r.method);
    const auto report = bench::pairwise_stats(runs, methods);
    if (!out_path.empty()) bench::write_stats_csv(out_path, report);
    for (const auto& e : report.entries)
        std::printf("%s,%s,%s,%s,%.9g,%.9g\n", e.indicator.c_str(), bench::to_string(e.a).c_str(),
                    bench::to_string(e.b).c_str(), e.direction.c_str(), e.p_raw, e.p_adjusted);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Surrogate-assisted multi-objective portfolio hyper-parameter search"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic market CSV");
    add_common(gen, o);
    std::string gen_out = "market.csv";
    double drift_lo = 0.0, drift_hi = 0.25, vol_lo = 0.10, vol_hi = 0.40, corr = 0.3;
    gen->add_option("--file", gen_out, "Output CSV path");
    gen->add_option("--drift-lo", drift_lo);
    gen->add_option("--drift-hi", drift_hi);
    gen->add_option("--vol-lo", vol_lo);
    gen->add_option("--vol-hi", vol_hi);
    gen->add_option("--corr", corr);

    auto* back = app.add_subcommand("backtest", "Evaluate one candidate's objectives");
    add_common(back, o);
    std::vector<double> genes{0.5, 0.5, 0.5};
    double noise_scale = 1.0;
    back->add_option("--genes", genes, "Three genes in [0,1]")->expected(3);
    back->add_option("--noise-scale", noise_scale, "Forecast noise multiplier");

    auto* search = app.add_subcommand("search", "One method, one seed");
    add_common(search, o);

    auto* reference = app.add_subcommand("reference", "Random-search reference frontier");
    add_common(reference, o);
    long ref_count = 2000;
    reference->add_option("--count", ref_count, "Reference evaluations");

    auto* experiment = app.add_subcommand("experiment", "Full repeated-trial experiment");
    add_common(experiment, o);
    std::string config_path;
    std::vector<std::string> exp_methods;
    int repeats = 0;
    long exp_ref_count = 0;
    experiment->add_option("--config", config_path, "TOML-style experiment config");
    experiment->add_option("--methods", exp_methods, "Methods to compare");
    experiment->add_option("--repeats", repeats, "Repeats per method");
    experiment->add_option("--reference-count", exp_ref_count, "Reference evaluations");

    auto* metrics = app.add_subcommand("metrics", "Indicators from frontier files");
    std::string frontier_path, reference_path;
    double ref_risk = 40.0, ref_return = 0.0;
    metrics->add_option("--frontier", frontier_path)->required();
    metrics->add_option("--reference", reference_path)->required();
    metrics->add_option("--ref-risk", ref_risk);
    metrics->add_option("--ref-return", ref_return);

    auto* stats = app.add_subcommand("stats", "Pairwise tests from an indicators table");
    std::string indicators_path, stats_out;
    stats->add_option("--indicators", indicators_path)->required();
    stats->add_option("--write", stats_out, "Also write stats CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_data(o, gen_out, drift_lo, drift_hi, vol_lo, vol_hi, corr);
        if (back->parsed()) return cmd_backtest(o, genes, noise_scale);
        if (search->parsed()) return cmd_search(o);
        if (reference->parsed()) return cmd_reference(o, ref_count);
        if (experiment->parsed())
            return cmd_experiment(o, config_path, exp_methods, repeats, exp_ref_count);
        if (metrics->parsed()) return cmd_metrics(frontier_path, reference_path, ref_risk, ref_return);
        if (stats->parsed()) return cmd_stats(indicators_path, stats_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
