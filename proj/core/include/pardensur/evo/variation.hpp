#pragma once

#include <utility>
#include <vector>

#include "pardensur/common/rng.hpp"
#include "pardensur/evo/candidate.hpp"

namespace pardensur::evo {

// Latin hypercube sample: one point per equal-width stratum of [0, 1] in
// every gene dimension, stratum order randomized.
std::vector<Candidate> lhs_init(std::size_t m, std::size_t dim, Rng& rng);

// Real uniform crossover: with probability `rate` each gene swaps between the
// children with probability 1/2; otherwise children copy the parents.
std::pair<Candidate, Candidate> uniform_crossover(const Candidate& p1, const Candidate& p2,
                                                  double rate, Rng& rng);

// Real polynomial mutation on bounds [0, 1], distribution index eta.
Candidate polynomial_mutation(const Candidate& c, double rate, double eta, Rng& rng);

}  // namespace pardensur::evo
