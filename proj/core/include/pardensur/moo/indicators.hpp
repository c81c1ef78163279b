#pragma once

#include <span>

#include "pardensur/moo/objective_point.hpp"

namespace pardensur::moo {

// Reference point (40, 0) in risk/return space.
inline constexpr ObjectivePoint kDefaultHvRef{40.0, 0.0};

// Exact 2-D hypervolume: area dominated by the set inside the box bounded by
// `ref`, computed by a sweep over the sorted non-dominated subset. Points at
// or beyond the reference in any dimension contribute nothing.
double hypervolume(std::span<const ObjectivePoint> points, ObjectivePoint ref = kDefaultHvRef);

// d+(a, z) = sqrt(sum_i max(a_i - z_i, 0)^2) in minimization form: how far a
// falls short of weakly dominating z.
double dplus(const ObjectivePoint& a, const ObjectivePoint& z);

// Mean over a in A of min over z in Z of d+(a, z).
double gd_plus(std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> target);

// Mean over z in Z of min over a in A of d+(a, z).
double igd_plus(std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> target);

}  // namespace pardensur::moo
