#pragma once

#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "pardensur/evo/candidate.hpp"
#include "pardensur/moo/objective_point.hpp"

namespace pardensur::surrogate {

// Aligned (candidate, objectives) pairs; candidate identities are unique.
struct Dataset {
    std::vector<evo::Candidate> inputs;
    std::vector<moo::ObjectivePoint> targets;

    std::size_t size() const { return inputs.size(); }

    void add(evo::Candidate c, moo::ObjectivePoint y) {
        inputs.push_back(std::move(c));
        targets.push_back(y);
    }

    void validate() const {
        if (inputs.size() != targets.size())
            throw std::invalid_argument("Dataset: inputs/targets length mismatch");
        std::unordered_set<std::uint64_t> ids;
        for (const auto& c : inputs)
            if (!ids.insert(c.identity()).second)
                throw std::invalid_argument("Dataset: duplicate candidate identity");
    }
};

}  // namespace pardensur::surrogate
