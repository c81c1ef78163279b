#pragma once

#include <span>

#include "pardensur/moo/objective_point.hpp"

namespace pardensur::search {

// Multi-objective space tolerance termination: true when the movement of the
// front, min-max normalized over the trailing window's union and measured as
// IGD+ in both directions between consecutive entries, stays below tolerance
// across the window. Needs at least two fronts to fire.
bool moo_space_termination(std::span<const moo::FrontierSet> front_history, double tolerance,
                           std::size_t window = 5);

}  // namespace pardensur::search
