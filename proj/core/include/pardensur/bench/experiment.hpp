#pragma once

#include <optional>
#include <string>

#include "pardensur/bt/backtest.hpp"
#include "pardensur/search/bare_driver.hpp"
#include "pardensur/search/pardensur.hpp"
#include "pardensur/stats/tests.hpp"

namespace pardensur::bench {

enum class Method {
    nsga2,
    rnsga2,
    pardensur_plain,
    pardensur_acceptance,
    pardensur_lookahead,
    pardensur_both,
    random_search,
    grid_search,
};

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct SyntheticDataSpec {
    std::size_t assets = 10;
    std::size_t days = 750;
    std::uint64_t seed = 42;
    bt::SyntheticSpec market{};
};

struct ExperimentSpec {
    std::vector<Method> methods{Method::nsga2, Method::pardensur_lookahead};
    int repeats = 10;
    std::uint64_t base_seed = 1000;        // run i searches with base_seed + i
    std::uint64_t evaluation_seed = 7;     // forecast noise: fixed per experiment
    search::SearchConfig search{};
    bt::BacktestConfig backtest{};
    port::CostParams costs{};
    port::ConstraintSet constraints{};
    bt::DecodeBoxes boxes{};
    evo::VariationConfig variation{};
    double rnsga2_epsilon = 0.1;
    std::string csv_path;                  // empty: synthetic market
    SyntheticDataSpec synthetic{};
    long reference_evaluations = 2000;
    double sr_threshold = 0.95;
    std::string out_dir = "out";
    unsigned eval_workers = 0;  // 0: hardware concurrency

    void validate() const;
};

struct RunRecord {
    Method method{};
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    moo::FrontierSet frontier;  // rounded exactly as written to disk
    moo::RunHistory history;
    double gd_plus = 0.0;
    double igd_plus = 0.0;
    double hv = 0.0;
    std::optional<long> evals_to_success;
    std::optional<int> gens_to_success;
};

struct StatsEntry {
    std::string indicator;
    Method a{};
    Method b{};
    std::string direction;  // "greater" when larger is better for a
    double p_raw = 1.0;
    double p_adjusted = 1.0;
};

struct StatsReport {
    std::vector<StatsEntry> entries;
};

struct ExperimentResult {
    moo::FrontierSet reference_frontier;  // rounded
    double reference_hv = 0.0;
    std::vector<RunRecord> runs;
    StatsReport stats;
};

// count LHS-sampled candidates, evaluated through the caching archive.
search::GroundTruthArchive random_search(long count, std::size_t dim,
                                         const search::BatchEvaluator& evaluator, Rng& rng);

// Evenly spaced lattice over the gene cube truncated to `total` points by
// dropping the lexicographically largest corners.
std::vector<evo::Candidate> grid_lattice(std::size_t per_dim, std::size_t dim, std::size_t total);

search::BatchEvaluator make_evaluator(const bt::Backtester& backtester, const bt::DecodeBoxes& boxes,
                                      unsigned workers);

// One search run of `method` with the given seed against a shared evaluator.
search::RunResult dispatch_method(Method method, const ExperimentSpec& spec, std::uint64_t seed,
                                  const search::BatchEvaluator& evaluator);

// Full protocol: reference frontier, repeated runs per method, indicators,
// pairwise one-sided tests with Hochberg adjustment, artifacts on disk.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Pairwise tests over per-run indicator samples.
StatsReport pairwise_stats(const std::vector<RunRecord>& runs,
                           const std::vector<Method>& methods);

}  // namespace pardensur::bench
