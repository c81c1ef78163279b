#include "pardensur/evo/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pardensur::evo {

std::vector<Candidate> lhs_init(std::size_t m, std::size_t dim, Rng& rng) {
    if (m < 1 || dim < 1) throw std::invalid_argument("lhs_init: m and dim must be >= 1");
    std::vector<Candidate> out(m);
    for (auto& c : out) c.genes.resize(dim);
    std::vector<std::size_t> strata(m);
    for (std::size_t d = 0; d < dim; ++d) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        rng.shuffle(strata);
        for (std::size_t i = 0; i < m; ++i) {
            const double u = rng.uniform01();
            out[i].genes[d] = (static_cast<double>(strata[i]) + u) / static_cast<double>(m);
        }
    }
    return out;
}

std::pair<Candidate, Candidate> uniform_crossover(const Candidate& p1, const Candidate& p2,
                                                  double rate, Rng& rng) {
    if (p1.dim() != p2.dim())
        throw std::invalid_argument("uniform_crossover: parent dimension mismatch");
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("uniform_crossover: rate outside [0, 1]");
    Candidate c1 = p1, c2 = p2;
    if (rng.uniform01() < rate) {
        for (std::size_t i = 0; i < c1.genes.size(); ++i)
            if (rng.uniform01() < 0.5) std::swap(c1.genes[i], c2.genes[i]);
    }
    return {std::move(c1), std::move(c2)};
}

Candidate polynomial_mutation(const Candidate& c, double rate, double eta, Rng& rng) {
    if (rate < 0.0 || rate > 1.0)
        throw std::invalid_argument("polynomial_mutation: rate outside [0, 1]");
    if (eta <= 0.0) throw std::invalid_argument("polynomial_mutation: eta must be positive");
    Candidate out = c;
    const double mut_pow = 1.0 / (eta + 1.0);
    for (double& x : out.genes) {
        if (rng.uniform01() >= rate) continue;
        const double u = rng.uniform01();
        double delta;
        if (u < 0.5) {
            const double d1 = x;  // distance to lower bound (bounds are [0, 1])
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
            delta = std::pow(val, mut_pow) - 1.0;
        } else {
            const double d2 = 1.0 - x;  // distance to upper bound
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
            delta = 1.0 - std::pow(val, mut_pow);
        }
        x = std::clamp(x + delta, 0.0, 1.0);
    }
    return out;
}

}  // namespace pardensur::evo
