#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pardensur::moo {

// Per-generation progress of a search run: cumulative simulator evaluations
// and the hypervolume of the archive frontier at that point. Record 0 is the
// warm start.
struct RunHistory {
    struct Record {
        int generation = 0;
        long evaluations = 0;
        double hypervolume = 0.0;
    };
    std::vector<Record> records;
    std::uint64_t seed = 0;

    void add(int generation, long evaluations, double hv);
};

// First generation whose hypervolume reaches `threshold * ref_hv`, if any.
struct Crossing {
    int generation = 0;
    long evaluations = 0;
};
std::optional<Crossing> first_crossing(const RunHistory& history, double ref_hv, double threshold);

struct QualityIndicators {
    double success_rate_pct = 0.0;          // SR
    std::optional<double> mean_evaluations;  // AESR, absent when SR = 0
    std::optional<double> mean_generations;  // AGSR, absent when SR = 0
};

// SR / AESR / AGSR over a set of runs. Runs that never cross are ignored by
// the averages.
QualityIndicators quality_indicators(std::span<const RunHistory> histories, double ref_hv,
                                     double threshold);

}  // namespace pardensur::moo
