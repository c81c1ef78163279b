#pragma once

#include <optional>

#include "pardensur/evo/candidate.hpp"
#include "pardensur/moo/objective_point.hpp"

namespace pardensur::evo {

struct Individual {
    Candidate candidate;
    std::optional<moo::ObjectivePoint> objectives;
    std::optional<int> rank;          // set by survival
    std::optional<double> crowding;   // set by survival

    Individual() = default;
    Individual(Candidate c, moo::ObjectivePoint obj)
        : candidate(std::move(c)), objectives(obj) {}
};

}  // namespace pardensur::evo
