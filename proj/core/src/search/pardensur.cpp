#include "pardensur/search/pardensur.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pardensur/moo/indicators.hpp"
#include "pardensur/moo/nondominated.hpp"
#include "pardensur/search/reservoir.hpp"
#include "pardensur/search/termination.hpp"
#include "pardensur/surrogate/ndscore.hpp"

namespace pardensur::search {

namespace {

constexpr std::uint64_t kCvTag = 0x6376;         // fold shuffling
constexpr std::uint64_t kAcceptTag = 0x616370;   // acceptance coin flips
constexpr std::uint64_t kReservoirTag = 0x726573;
constexpr std::uint64_t kFitTag = 0x666974;

surrogate::FitConfig fit_config_for(const SearchConfig& cfg, int generation) {
    surrogate::FitConfig fc = cfg.surrogate_fit;
    fc.rng_seed = derive_seed(derive_seed(cfg.seed, kFitTag), static_cast<std::uint64_t>(generation));
    return fc;
}

// Drop candidates already archived and duplicates within the batch.
std::vector<evo::Candidate> dedup_against_archive(std::vector<evo::Candidate> xs,
                                                  const GroundTruthArchive& archive) {
    std::vector<evo::Candidate> out;
    out.reserve(xs.size());
    std::unordered_set<std::uint64_t> seen;
    for (auto& x : xs) {
        const auto id = x.identity();
        if (archive.contains(id) || !seen.insert(id).second) continue;
        out.push_back(std::move(x));
    }
    return out;
}

bool dominated_by_any(const moo::ObjectivePoint& p, std::span<const moo::ObjectivePoint> set) {
    for (const auto& q : set)
        if (moo::dominates(q, p)) return true;
    return false;
}

}  // namespace

BatchEvaluator serial_evaluator(std::function<moo::ObjectivePoint(const evo::Candidate&)> f) {
    return [f = std::move(f)](std::span<const evo::Candidate> xs) {
        std::vector<moo::ObjectivePoint> out;
        out.reserve(xs.size());
        for (const auto& x : xs) out.push_back(f(x));
        return out;
    };
}

namespace detail {

std::vector<evo::Individual> evaluate_generation(std::span<const evo::Candidate> pretenders,
                                                 GroundTruthArchive& archive, long& sim_calls,
                                                 long budget, const BatchEvaluator& evaluator) {
    enum class Source { cached, fresh, dropped };
    std::vector<Source> plan(pretenders.size());
    std::vector<evo::Candidate> fresh;
    std::unordered_set<std::uint64_t> batch_ids;
    for (std::size_t i = 0; i < pretenders.size(); ++i) {
        const auto id = pretenders[i].identity();
        if (archive.contains(id) || batch_ids.contains(id)) {
            plan[i] = Source::cached;
        } else if (sim_calls + static_cast<long>(fresh.size()) < budget) {
            fresh.push_back(pretenders[i]);
            batch_ids.insert(id);
            plan[i] = Source::fresh;
        } else {
            plan[i] = Source::dropped;  // out of budget: truncate in stream order
        }
    }
    const auto results = evaluator(fresh);
    if (results.size() != fresh.size())
        throw std::runtime_error("evaluate_generation: evaluator returned wrong batch size");
    for (std::size_t k = 0; k < fresh.size(); ++k) {
        if (archive.insert(fresh[k], results[k])) ++sim_calls;
    }
    std::vector<evo::Individual> evaluated;
    evaluated.reserve(pretenders.size());
    for (std::size_t i = 0; i < pretenders.size(); ++i) {
        if (plan[i] == Source::dropped) continue;
        auto obj = archive.lookup(pretenders[i].identity());
        if (!obj) continue;
        evaluated.emplace_back(pretenders[i], *obj);
    }
    return evaluated;
}

}  // namespace detail

std::vector<evo::Candidate> look_ahead(const surrogate::BaggedTreesModel& model,
                                       const GroundTruthArchive& archive, const evo::EAState& ea,
                                       double nd_score, const SearchConfig& config, Rng& rng) {
    if (archive.size() == 0) throw std::invalid_argument("look_ahead: empty archive");
    const auto r = static_cast<std::size_t>(
        std::max<long>(1, std::lround(static_cast<double>(config.offspring) * nd_score)));

    evo::EAState ea_copy = ea;  // throw-away copy; the live EA is untouched
    auto pareto_copy = archive.pareto_entries();
    std::vector<evo::Candidate> pareto_cands;
    moo::FrontierSet pareto_objs;
    for (auto& e : pareto_copy) {
        pareto_cands.push_back(e.candidate);
        pareto_objs.push_back(e.objectives);
    }

    Reservoir reservoir(r, Rng(rng.raw()));
    std::vector<moo::FrontierSet> front_history;
    for (std::size_t iter = 0; iter < config.look_ahead_max_generations; ++iter) {
        if (iter >= 1 && moo_space_termination(front_history, config.look_ahead_tolerance,
                                               config.look_ahead_window))
            break;
        auto cands = evo::infill(ea_copy, config.offspring);
        const auto preds = model.predict(cands);
        std::vector<evo::Individual> estimated;
        estimated.reserve(cands.size());
        for (std::size_t i = 0; i < cands.size(); ++i) estimated.emplace_back(cands[i], preds[i]);
        evo::advance(ea_copy, estimated);

        // Pretenders: candidates non-dominated within (candidates u front copy).
        moo::FrontierSet merged = preds;
        merged.insert(merged.end(), pareto_objs.begin(), pareto_objs.end());
        const auto keep = moo::nondominated_filter(merged);
        std::vector<evo::Candidate> next_cands;
        moo::FrontierSet next_objs;
        for (std::size_t idx : keep) {
            if (idx < preds.size()) {
                reservoir.update(cands[idx]);
                next_cands.push_back(cands[idx]);
                next_objs.push_back(preds[idx]);
            } else {
                next_cands.push_back(pareto_cands[idx - preds.size()]);
                next_objs.push_back(pareto_objs[idx - preds.size()]);
            }
        }
        pareto_cands = std::move(next_cands);
        pareto_objs = std::move(next_objs);
        front_history.push_back(pareto_objs);
    }
    return reservoir.items();
}

std::vector<evo::Candidate> acceptance_fill(evo::EAState& ea,
                                            const surrogate::BaggedTreesModel& model,
                                            const GroundTruthArchive& archive, std::size_t slots,
                                            double nd_score, const SearchConfig& config, Rng& rng) {
    std::vector<evo::Candidate> accepted;
    if (slots == 0) return accepted;
    accepted.reserve(slots);
    moo::FrontierSet context = archive.pareto();  // dominance-equivalent to the full archive
    std::size_t draws = 0;
    const std::size_t cap = config.acceptance_draw_cap_factor * slots;
    while (accepted.size() < slots && draws < cap) {
        auto batch = evo::infill(ea, slots - accepted.size());
        const auto preds = model.predict(batch);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (accepted.size() == slots || draws == cap) break;
            ++draws;
            const bool predicted_front = !dominated_by_any(preds[i], context);
            if (predicted_front || rng.uniform01() < 1.0 - nd_score) {
                context.push_back(preds[i]);
                accepted.push_back(std::move(batch[i]));
            }
        }
    }
    if (accepted.size() < slots) {
        auto rest = evo::infill(ea, slots - accepted.size());
        for (auto& c : rest) accepted.push_back(std::move(c));
    }
    return accepted;
}

RunResult run(const SearchConfig& config, evo::EAState ea, const BatchEvaluator& evaluator,
              const HistoryCallback& on_generation) {
    config.validate();
    GroundTruthArchive archive;
    moo::RunHistory history;
    history.seed = config.seed;
    long sim_calls = 0;
    Rng cv_rng(derive_seed(config.seed, kCvTag));
    Rng accept_rng(derive_seed(config.seed, kAcceptTag));
    Rng reservoir_rng(derive_seed(config.seed, kReservoirTag));

    auto pretenders = evo::infill(ea, config.population);  // LHS warm start
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

        if (!config.acceptance && !config.look_ahead) {
            pretenders = evo::infill(ea, config.offspring);
            continue;
        }

        const auto data = archive.dataset();
        const auto fc = fit_config_for(config, generation);
        const auto model = surrogate::fit(data, fc);
        const double nd = surrogate::nd_score(data, config.k_folds, fc, cv_rng);

        std::vector<evo::Candidate> next;
        if (config.look_ahead) {
            next = dedup_against_archive(
                look_ahead(model, archive, ea, nd, config, reservoir_rng), archive);
        } else {
            // One batch filtered to candidates predicted non-dominated against
            // the ground truth and the batch itself.
            auto batch = evo::infill(ea, config.offspring);
            const auto preds = model.predict(batch);
            moo::FrontierSet pool = archive.pareto();
            pool.insert(pool.end(), preds.begin(), preds.end());
            std::vector<evo::Candidate> front_cands;
            for (std::size_t i = 0; i < batch.size(); ++i)
                if (!dominated_by_any(preds[i], pool)) front_cands.push_back(batch[i]);
            next = dedup_against_archive(std::move(front_cands), archive);
        }
        if (next.size() > config.offspring) next.resize(config.offspring);
        const std::size_t slots = config.offspring - next.size();
        if (slots > 0) {
            auto fill = config.acceptance
                            ? acceptance_fill(ea, model, archive, slots, nd, config, accept_rng)
                            : evo::infill(ea, slots);
            for (auto& c : fill) next.push_back(std::move(c));
        }
        pretenders = std::move(next);
    }
    return {archive.pareto(), std::move(archive), std::move(history)};
}

}  // namespace pardensur::search
