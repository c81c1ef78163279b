#pragma once

#include <vector>

#include "pardensur/common/rng.hpp"
#include "pardensur/evo/candidate.hpp"

namespace pardensur::search {

// Algorithm-R reservoir: keeps a uniform random subset of fixed capacity from
// a stream of unknown length.
class Reservoir {
public:
    Reservoir(std::size_t capacity, Rng rng) : capacity_(capacity), rng_(std::move(rng)) {
        if (capacity_ < 1) throw std::invalid_argument("Reservoir: capacity must be >= 1");
        items_.reserve(capacity_);
    }

    void update(evo::Candidate item) {
        ++seen_;
        if (items_.size() < capacity_) {
            items_.push_back(std::move(item));
            return;
        }
        const auto j = rng_.below(seen_);
        if (j < capacity_) items_[static_cast<std::size_t>(j)] = std::move(item);
    }

    const std::vector<evo::Candidate>& items() const { return items_; }
    std::size_t capacity() const { return capacity_; }
    std::uint64_t seen() const { return seen_; }

private:
    std::size_t capacity_;
    std::vector<evo::Candidate> items_;
    std::uint64_t seen_ = 0;
    Rng rng_;
};

}  // namespace pardensur::search
