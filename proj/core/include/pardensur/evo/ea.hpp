#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pardensur/common/rng.hpp"
#include "pardensur/evo/individual.hpp"
#include "pardensur/evo/variation.hpp"

namespace pardensur::evo {

enum class Engine { nsga2, rnsga2 };

struct VariationConfig {
    double crossover_rate = 0.9;
    double mutation_rate = 0.3;
    double eta = 20.0;
};

// Ask/tell evolutionary engine state. `infill` asks for candidates, `advance`
// tells it the evaluated individuals; the driver owns evaluation.
struct EAState {
    Engine engine = Engine::nsga2;
    std::size_t mu = 60;       // population size
    std::size_t lambda = 30;   // offspring batch size
    std::size_t gene_dim = 3;
    VariationConfig variation;
    std::vector<Individual> population;
    Rng rng;
    long generation = 0;

    // R-NSGA-II only. When empty, the two single-objective ideal corners of
    // the merged set's normalized objective space are used each generation.
    std::vector<moo::ObjectivePoint> reference_points;
    double epsilon = 0.1;

    static EAState make(Engine engine, std::size_t mu, std::size_t lambda, std::size_t gene_dim,
                        std::uint64_t seed, VariationConfig variation = {});
};

// Binary tournament on (rank asc, crowding desc), final ties by coin flip.
const Individual& tournament_select(std::span<const Individual> pool, Rng& rng);

// m candidates via selection -> crossover -> mutation; LHS warm start when the
// population is empty. Duplicates of current population members (by identity)
// are re-drawn, up to 10*m extra attempts.
std::vector<Candidate> infill(EAState& state, std::size_t m);

// Survival selection over population + evaluated, engine-specific. Population
// size is exactly mu afterwards (or the merged size when smaller).
void advance(EAState& state, std::span<const Individual> evaluated);

// R-NSGA-II survival over a merged set: front-wise, splitting front resolved
// by normalized distance to reference points with epsilon clearing.
std::vector<Individual> rnsga2_survival(std::span<const Individual> merged, std::size_t mu,
                                        std::span<const moo::ObjectivePoint> ref_points,
                                        double epsilon);

}  // namespace pardensur::evo
