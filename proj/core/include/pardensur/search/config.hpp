#pragma once

#include <cstdint>
#include <stdexcept>

#include "pardensur/moo/indicators.hpp"
#include "pardensur/surrogate/model.hpp"

namespace pardensur::search {

struct SearchConfig {
    long budget = 510;                 // max simulator evaluations
    std::size_t population = 60;       // warm start / EA population size
    std::size_t offspring = 30;        // pretender batch per generation
    bool acceptance = false;
    bool look_ahead = false;
    double look_ahead_tolerance = 1e-4;
    std::size_t look_ahead_max_generations = 100;
    std::size_t look_ahead_window = 5;
    std::size_t acceptance_draw_cap_factor = 10;
    std::size_t k_folds = 5;
    std::uint64_t seed = 0;
    surrogate::FitConfig surrogate_fit{};
    moo::ObjectivePoint hv_ref = moo::kDefaultHvRef;

    void validate() const {
        if (population < 1 || offspring < 1)
            throw std::invalid_argument("SearchConfig: population and offspring must be >= 1");
        if (budget < static_cast<long>(population))
            throw std::invalid_argument("SearchConfig: budget must be >= population");
        if (look_ahead_tolerance <= 0.0)
            throw std::invalid_argument("SearchConfig: look_ahead_tolerance must be positive");
        if (k_folds < 1) throw std::invalid_argument("SearchConfig: k_folds must be >= 1");
    }
};

}  // namespace pardensur::search
