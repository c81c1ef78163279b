#include "pardensur/search/bare_driver.hpp"

#include "pardensur/moo/indicators.hpp"

namespace pardensur::search {

RunResult bare_ea_run(const SearchConfig& config, evo::EAState ea, const BatchEvaluator& evaluator,
                      const HistoryCallback& on_generation) {
    config.validate();
    GroundTruthArchive archive;
    moo::RunHistory history;
    history.seed = config.seed;
    long sim_calls = 0;

    auto pretenders = evo::infill(ea, config.population);
    int generation = 0;
    while (true) {
        std::vector<evo::Individual> evaluated;
        try {
            evaluated = detail::evaluate_generation(pretenders, archive, sim_calls, config.budget,
                                                    evaluator);
        } catch (const std::exception& e) {
            throw RunAbortError(std::string("run aborted by evaluator: ") + e.what(),
                                std::move(archive), std::move(history));
        }
        history.add(generation, sim_calls, moo::hypervolume(archive.pareto(), config.hv_ref));
        if (on_generation) on_generation(history.records.back());
        ++generation;
        if (sim_calls >= config.budget) break;
        evo::advance(ea, evaluated);
        pretenders = evo::infill(ea, config.offspring);
    }
    return {archive.pareto(), std::move(archive), std::move(history)};
}

}  // namespace pardensur::search
