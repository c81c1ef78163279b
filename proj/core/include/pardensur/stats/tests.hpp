#pragma once

#include <span>
#include <vector>

namespace pardensur::stats {

enum class Alternative { x_greater, x_less };

// One-sided Mann-Whitney U test. Exact permutation distribution (over all
// C(n+m, n) labelings, ties at 1/2) when n + m <= 20; normal approximation
// with tie correction and continuity correction otherwise.
double mann_whitney_one_sided(std::span<const double> x, std::span<const double> y,
                              Alternative alternative);

// Simes-Hochberg step-up adjustment, mapped back to input order.
std::vector<double> hochberg_adjust(std::span<const double> p_values);

}  // namespace pardensur::stats
