#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pardensur/evo/candidate.hpp"
#include "pardensur/moo/objective_point.hpp"
#include "pardensur/surrogate/dataset.hpp"

namespace pardensur::search {

// Ground truth: every simulator-evaluated (candidate, objectives) pair, keyed
// by candidate identity, with the insertion order preserved.
class GroundTruthArchive {
public:
    struct Entry {
        evo::Candidate candidate;
        moo::ObjectivePoint objectives;
    };

    bool contains(std::uint64_t identity) const { return index_.contains(identity); }
    std::optional<moo::ObjectivePoint> lookup(std::uint64_t identity) const;

    // Returns false when the identity is already present (no overwrite).
    bool insert(evo::Candidate candidate, moo::ObjectivePoint objectives);

    std::size_t size() const { return log_.size(); }
    const std::vector<Entry>& log() const { return log_; }

    // Exact non-dominated subset (objective space, duplicates removed).
    moo::FrontierSet pareto() const;
    std::vector<Entry> pareto_entries() const;

    surrogate::Dataset dataset() const;

private:
    std::vector<Entry> log_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

}  // namespace pardensur::search
