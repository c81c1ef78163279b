#pragma once

#include <span>
#include <vector>

#include "pardensur/moo/objective_point.hpp"

namespace pardensur::moo {

// Fast non-dominated sorting. Rank 0 is the non-dominated set; rank k is
// non-dominated once ranks < k are removed. Duplicates share a rank.
std::vector<int> nondominated_sort(std::span<const ObjectivePoint> points);

// Indices of the non-dominated subset, in input order, exact duplicates kept
// once (first occurrence wins).
std::vector<std::size_t> nondominated_filter(std::span<const ObjectivePoint> points);

// Manhattan crowding distance over a single non-dominated front. Extremes in
// either objective get +infinity; a zero-range objective contributes 0.
std::vector<double> crowding_distance(std::span<const ObjectivePoint> front);

}  // namespace pardensur::moo
