#pragma once

#include <functional>
#include <optional>
#include <span>

#include "pardensur/common/rng.hpp"
#include "pardensur/surrogate/model.hpp"

namespace pardensur::surrogate {

// Kendall tau-b with tie correction (Knight's O(n log n) algorithm). Returns
// nullopt when the denominator vanishes (a rank list fully tied), which marks
// a degenerate cross-validation fold.
std::optional<double> kendall_tau_b(std::span<const int> r, std::span<const int> r_hat);

using FitFn = std::function<std::unique_ptr<Regressor>(const Dataset&)>;

// Cross-validated score of how well a surrogate reproduces non-dominating
// ranks: per fold, (tau_b(true ranks, predicted ranks) + 1) / 2 within the
// validation split; mean over non-degenerate folds, 0.5 if all degenerate.
// k = 1 trains and validates on the full dataset.
double nd_score(const Dataset& data, std::size_t k, const FitFn& fitter, Rng& rng);

// Convenience overload backed by bagged trees.
double nd_score(const Dataset& data, std::size_t k, const FitConfig& config, Rng& rng);

}  // namespace pardensur::surrogate
