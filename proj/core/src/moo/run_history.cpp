#include "pardensur/moo/run_history.hpp"

#include <stdexcept>

namespace pardensur::moo {

void RunHistory::add(int generation, long evaluations, double hv) {
    if (!records.empty() && evaluations <= records.back().evaluations)
        throw std::invalid_argument("RunHistory: evaluation counts must be strictly increasing");
    records.push_back({generation, evaluations, hv});
}

std::optional<Crossing> first_crossing(const RunHistory& history, double ref_hv, double threshold) {
    const double bar = threshold * ref_hv;
    for (const auto& rec : history.records)
        if (rec.hypervolume >= bar) return Crossing{rec.generation, rec.evaluations};
    return std::nullopt;
}

QualityIndicators quality_indicators(std::span<const RunHistory> histories, double ref_hv,
                                     double threshold) {
    if (threshold <= 0.0 || threshold > 1.0)
        throw std::invalid_argument("quality_indicators: threshold must be in (0, 1]");
    if (ref_hv <= 0.0) throw std::invalid_argument("quality_indicators: ref_hv must be positive");
    std::size_t successes = 0;
    double eval_sum = 0.0, gen_sum = 0.0;
    for (const auto& h : histories) {
        if (h.records.empty())
            throw std::invalid_argument("quality_indicators: empty run history");
        if (auto c = first_crossing(h, ref_hv, threshold)) {
            ++successes;
            eval_sum += static_cast<double>(c->evaluations);
            gen_sum += static_cast<double>(c->generation);
        }
    }
    QualityIndicators out;
    if (!histories.empty())
        out.success_rate_pct = 100.0 * static_cast<double>(successes) / static_cast<double>(histories.size());
    if (successes > 0) {
        out.mean_evaluations = eval_sum / static_cast<double>(successes);
        out.mean_generations = gen_sum / static_cast<double>(successes);
    }
    return out;
}

}  // namespace pardensur::moo
