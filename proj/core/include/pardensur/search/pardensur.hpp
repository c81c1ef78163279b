#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pardensur/evo/ea.hpp"
#include "pardensur/moo/run_history.hpp"
#include "pardensur/search/archive.hpp"
#include "pardensur/search/config.hpp"

namespace pardensur::search {

// Evaluates a pretender batch; results must align with the input order. The
// batch may be computed concurrently, results are committed in order.
using BatchEvaluator =
    std::function<std::vector<moo::ObjectivePoint>(std::span<const evo::Candidate>)>;

BatchEvaluator serial_evaluator(std::function<moo::ObjectivePoint(const evo::Candidate&)> f);

using HistoryCallback = std::function<void(const moo::RunHistory::Record&)>;

struct RunResult {
    moo::FrontierSet pareto;
    GroundTruthArchive archive;
    moo::RunHistory history;
};

// Evaluator failure aborts a run; the committed archive rides along.
class RunAbortError : public std::runtime_error {
public:
    RunAbortError(const std::string& msg, GroundTruthArchive archive, moo::RunHistory history)
        : std::runtime_error(msg), archive(std::move(archive)), history(std::move(history)) {}
    GroundTruthArchive archive;
    moo::RunHistory history;
};

// Surrogate-assisted search: warm start, ground-truth archive, per-generation
// surrogate refit, then look-ahead and/or acceptance-sampled pretender batches
// per the flags. With both flags off the trajectory matches the bare driver.
RunResult run(const SearchConfig& config, evo::EAState ea, const BatchEvaluator& evaluator,
              const HistoryCallback& on_generation = {});

// Inner look-ahead: iterates a throw-away EA copy on surrogate predictions,
// streaming predicted-non-dominated candidates through a reservoir sized
// max(1, round(offspring * nd_score)). Live state is untouched.
std::vector<evo::Candidate> look_ahead(const surrogate::BaggedTreesModel& model,
                                       const GroundTruthArchive& archive, const evo::EAState& ea,
                                       double nd_score, const SearchConfig& config, Rng& rng);

// Acceptance-sampled fill: predicted-non-dominated candidates are accepted,
// predicted-dominated ones with probability (1 - nd_score); after the draw cap
// the remainder is filled unconditionally.
std::vector<evo::Candidate> acceptance_fill(evo::EAState& ea,
                                            const surrogate::BaggedTreesModel& model,
                                            const GroundTruthArchive& archive, std::size_t slots,
                                            double nd_score, const SearchConfig& config, Rng& rng);

namespace detail {
// Cache-aware, budget-clipped evaluation of one pretender batch, committed in
// candidate order. Duplicates never consume budget.
std::vector<evo::Individual> evaluate_generation(std::span<const evo::Candidate> pretenders,
                                                 GroundTruthArchive& archive, long& sim_calls,
                                                 long budget, const BatchEvaluator& evaluator);
}  // namespace detail

}  // namespace pardensur::search
