#pragma once

#include "pardensur/search/pardensur.hpp"

namespace pardensur::search {

// Plain generational ask/tell driver over the same memoized evaluation layer:
// LHS warm start of `population`, then `offspring` infill candidates per
// generation until the budget is spent. Regression anchor for the
// surrogate-assisted path with both flags off.
RunResult bare_ea_run(const SearchConfig& config, evo::EAState ea, const BatchEvaluator& evaluator,
                      const HistoryCallback& on_generation = {});

}  // namespace pardensur::search
