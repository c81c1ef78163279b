#include "pardensur/bench/experiment.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "pardensur/bench/artifacts.hpp"
#include "pardensur/common/parallel.hpp"
#include "pardensur/moo/indicators.hpp"

namespace pardensur::bench {

std::string to_string(Method m) {
    switch (m) {
        case Method::nsga2: return "nsga2";
        case Method::rnsga2: return "rnsga2";
        case Method::pardensur_plain: return "pardensur-plain";
        case Method::pardensur_acceptance: return "pardensur-acceptance";
        case Method::pardensur_lookahead: return "pardensur-lookahead";
        case Method::pardensur_both: return "pardensur-both";
        case Method::random_search: return "random-search";
        case Method::grid_search: return "grid-search";
    }
    throw std::logic_error("to_string: bad method");
}

Method method_from_string(const std::string& name) {
    for (Method m : {Method::nsga2, Method::rnsga2, Method::pardensur_plain,
                     Method::pardensur_acceptance, Method::pardensur_lookahead,
                     Method::pardensur_both, Method::random_search, Method::grid_search})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown method '" + name + "'");
}

void ExperimentSpec::validate() const {
    if (repeats < 1) throw std::invalid_argument("ExperimentSpec: repeats must be >= 1");
    if (methods.empty()) throw std::invalid_argument("ExperimentSpec: no methods");
    if (reference_evaluations < 1)
        throw std::invalid_argument("ExperimentSpec: reference_evaluations must be >= 1");
    if (sr_threshold <= 0.0 || sr_threshold > 1.0)
        throw std::invalid_argument("ExperimentSpec: sr_threshold must be in (0, 1]");
    search.validate();
    backtest.validate();
}

search::GroundTruthArchive random_search(long count, std::size_t dim,
                                         const search::BatchEvaluator& evaluator, Rng& rng) {
    if (count < 1) throw std::invalid_argument("random_search: count must be >= 1");
    const auto candidates = evo::lhs_init(static_cast<std::size_t>(count), dim, rng);
    search::GroundTruthArchive archive;
    long sim_calls = 0;
    search::detail::evaluate_generation(candidates, archive, sim_calls, count, evaluator);
    return archive;
}

std::vector<evo::Candidate> grid_lattice(std::size_t per_dim, std::size_t dim, std::size_t total) {
    if (per_dim < 2 || dim < 1) throw std::invalid_argument("grid_lattice: bad shape");
    std::vector<evo::Candidate> points;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        evo::Candidate c;
        c.genes.resize(dim);
        for (std::size_t d = 0; d < dim; ++d)
            c.genes[d] = static_cast<double>(idx[d]) / static_cast<double>(per_dim - 1);
        points.push_back(std::move(c));
        std::size_t d = 0;
        while (d < dim && ++idx[d] == per_dim) {
            idx[d] = 0;
            ++d;
        }
        if (d == dim) break;
    }
    if (points.size() < total)
        throw std::invalid_argument("grid_lattice: lattice smaller than requested total");
    // Drop the lexicographically largest points down to `total`.
    std::sort(points.begin(), points.end(),
              [](const evo::Candidate& a, const evo::Candidate& b) { return a.genes < b.genes; });
    points.resize(total);
    return points;
}

search::BatchEvaluator make_evaluator(const bt::Backtester& backtester, const bt::DecodeBoxes& boxes,
                                      unsigned workers) {
    return [&backtester, boxes, workers](std::span<const evo::Candidate> xs) {
        std::vector<moo::ObjectivePoint> out(xs.size());
        parallel_for(xs.size(), workers,
                     [&](std::size_t i) { out[i] = backtester.evaluate_candidate(xs[i], boxes); });
        return out;
    };
}

namespace {

search::SearchConfig search_config_for(Method method, const ExperimentSpec& spec,
                                       std::uint64_t seed) {
    search::SearchConfig cfg = spec.search;
    cfg.seed = seed;
    switch (method) {
        case Method::pardensur_plain: cfg.acceptance = false; cfg.look_ahead = false; break;
        case Method::pardensur_acceptance: cfg.acceptance = true; cfg.look_ahead = false; break;
        case Method::pardensur_lookahead: cfg.acceptance = false; cfg.look_ahead = true; break;
        case Method::pardensur_both: cfg.acceptance = true; cfg.look_ahead = true; break;
        default: cfg.acceptance = false; cfg.look_ahead = false; break;
    }
    return cfg;
}

evo::EAState ea_for(Method method, const ExperimentSpec& spec, std::uint64_t seed) {
    const auto engine = method == Method::rnsga2 ? evo::Engine::rnsga2 : evo::Engine::nsga2;
    auto ea = evo::EAState::make(engine, spec.search.population, spec.search.offspring, 3, seed,
                                 spec.variation);
    ea.epsilon = spec.rnsga2_epsilon;
    return ea;
}

search::RunResult archive_only_result(search::GroundTruthArchive archive, std::uint64_t seed,
                                      const moo::ObjectivePoint& hv_ref) {
    search::RunResult r;
    r.pareto = archive.pareto();
    moo::RunHistory history;
    history.seed = seed;
    history.add(0, static_cast<long>(archive.size()), moo::hypervolume(r.pareto, hv_ref));
    r.history = std::move(history);
    r.archive = std::move(archive);
    return r;
}

}  // namespace

search::RunResult dispatch_method(Method method, const ExperimentSpec& spec, std::uint64_t seed,
                                  const search::BatchEvaluator& evaluator) {
    switch (method) {
        case Method::nsga2:
        case Method::rnsga2: {
            auto cfg = search_config_for(method, spec, seed);
            return search::bare_ea_run(cfg, ea_for(method, spec, seed), evaluator);
        }
        case Method::pardensur_plain:
        case Method::pardensur_acceptance:
        case Method::pardensur_lookahead:
        case Method::pardensur_both: {
            auto cfg = search_config_for(method, spec, seed);
            return search::run(cfg, ea_for(method, spec, seed), evaluator);
        }
        case Method::random_search: {
            Rng rng(derive_seed(seed, 0x726e64));
            auto archive = random_search(spec.search.budget, 3, evaluator, rng);
            return archive_only_result(std::move(archive), seed, spec.search.hv_ref);
        }
        case Method::grid_search: {
            const auto points = grid_lattice(8, 3, static_cast<std::size_t>(spec.search.budget));
            search::GroundTruthArchive archive;
            long sim_calls = 0;
            search::detail::evaluate_generation(points, archive, sim_calls, spec.search.budget,
                                                evaluator);
            return archive_only_result(std::move(archive), seed, spec.search.hv_ref);
        }
    }
    throw std::logic_error("dispatch_method: bad method");
}

StatsReport pairwise_stats(const std::vector<RunRecord>& runs,
                           const std::vector<Method>& methods) {
    std::map<Method, std::vector<const RunRecord*>> by_method;
    for (const auto& r : runs)
        if (!r.failed) by_method[r.method].push_back(&r);

    struct IndicatorDef {
        const char* name;
        bool greater_better;
    };
    const IndicatorDef defs[] = {
        {"hv", true}, {"gd_plus", false}, {"igd_plus", false}, {"esr", false}};

    StatsReport report;
    for (Method a : methods) {
        for (Method b : methods) {
            if (a == b) continue;
            for (const auto& def : defs) {
                auto collect = [&](Method m) {
                    std::vector<double> vals;
                    for (const RunRecord* r : by_method[m]) {
                        if (std::string_view(def.name) == "hv") vals.push_back(r->hv);
                        else if (std::string_view(def.name) == "gd_plus") vals.push_back(r->gd_plus);
                        else if (std::string_view(def.name) == "igd_plus") vals.push_back(r->igd_plus);
                        else if (r->evals_to_success)
                            vals.push_back(static_cast<double>(*r->evals_to_success));
                    }
                    return vals;
                };
                const auto xs = collect(a);
                const auto ys = collect(b);
                if (xs.empty() || ys.empty()) continue;
                StatsEntry e;
                e.indicator = def.name;
                e.a = a;
                e.b = b;
                e.direction = def.greater_better ? "greater" : "less";
                e.p_raw = stats::mann_whitney_one_sided(
                    xs, ys,
                    def.greater_better ? stats::Alternative::x_greater : stats::Alternative::x_less);
                report.entries.push_back(std::move(e));
            }
        }
    }
    std::vector<double> raw;
    raw.reserve(report.entries.size());
    for (const auto& e : report.entries) raw.push_back(e.p_raw);
    const auto adjusted = stats::hochberg_adjust(raw);
    for (std::size_t i = 0; i < adjusted.size(); ++i) report.entries[i].p_adjusted = adjusted[i];
    return report;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    namespace fs = std::filesystem;
    const fs::path out(spec.out_dir);
    fs::create_directories(out);

    bt::MarketData data = spec.csv_path.empty()
                              ? bt::gen_synthetic(spec.synthetic.assets, spec.synthetic.days,
                                                  spec.synthetic.seed, spec.synthetic.market)
                              : bt::load_csv(spec.csv_path);
    const bt::Backtester backtester(std::move(data), spec.backtest, spec.costs, spec.constraints,
                                    spec.evaluation_seed);

    // Reference frontier from a random search, shared by every method.
    ExperimentResult result;
    {
        auto evaluator = make_evaluator(backtester, spec.boxes, spec.eval_workers);
        Rng ref_rng(derive_seed(spec.base_seed, 0x726566));
        auto ref_archive = random_search(spec.reference_evaluations, 3, evaluator, ref_rng);
        result.reference_frontier = round_frontier(ref_archive.pareto());
        result.reference_hv = moo::hypervolume(result.reference_frontier, spec.search.hv_ref);
    }
    write_frontier_csv((out / "reference_frontier.csv").string(), result.reference_frontier);

    // Independent runs, parallel at run level with serial evaluators inside.
    struct Task {
        Method method;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (Method m : spec.methods)
        for (int i = 0; i < spec.repeats; ++i)
            tasks.push_back({m, spec.base_seed + static_cast<std::uint64_t>(i)});
    const unsigned run_workers =
        std::min<unsigned>(spec.eval_workers == 0 ? default_workers() : spec.eval_workers,
                           static_cast<unsigned>(tasks.size()));
    auto run_evaluator =
        make_evaluator(backtester, spec.boxes, run_workers > 1 ? 1 : spec.eval_workers);

    result.runs.resize(tasks.size());
    parallel_for(tasks.size(), run_workers, [&](std::size_t i) {
        RunRecord rec;
        rec.method = tasks[i].method;
        rec.seed = tasks[i].seed;
        try {
            auto run = dispatch_method(tasks[i].method, spec, tasks[i].seed, run_evaluator);
            rec.frontier = round_frontier(run.pareto);
            rec.history = std::move(run.history);
        } catch (const search::RunAbortError& e) {
            rec.failed = true;
            rec.error = e.what();
            rec.frontier = round_frontier(e.archive.pareto());
            rec.history = e.history;
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        result.runs[i] = std::move(rec);
    });

    // Indicators against the reference frontier, using rounded frontiers so the
    // table recomputes exactly from the saved artifacts.
    for (auto& rec : result.runs) {
        if (rec.frontier.empty()) continue;
        rec.gd_plus = moo::gd_plus(rec.frontier, result.reference_frontier);
        rec.igd_plus = moo::igd_plus(rec.frontier, result.reference_frontier);
        rec.hv = moo::hypervolume(rec.frontier, spec.search.hv_ref);
        if (auto c = moo::first_crossing(rec.history, result.reference_hv, spec.sr_threshold)) {
            rec.evals_to_success = c->evaluations;
            rec.gens_to_success = c->generation;
        }
    }

    for (const auto& rec : result.runs) {
        const fs::path run_dir = out / to_string(rec.method) / ("run_" + std::to_string(rec.seed));
        fs::create_directories(run_dir);
        write_frontier_csv((run_dir / "frontier.csv").string(), rec.frontier);
        write_history_csv((run_dir / "history.csv").string(), rec.history);
    }
    write_indicators_csv((out / "indicators.csv").string(), result.runs);

    result.stats = pairwise_stats(result.runs, spec.methods);
    write_stats_csv((out / "stats.csv").string(), result.stats);
    write_summary_json((out / "summary.json").string(), spec, result);
    return result;
}

}  // namespace pardensur::bench
