#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "pardensur/surrogate/dataset.hpp"
#include "pardensur/surrogate/tree.hpp"

namespace pardensur::surrogate {

// Estimator interface so alternative surrogates can be plugged in.
class Regressor {
public:
    virtual ~Regressor() = default;
    virtual std::vector<moo::ObjectivePoint> predict(
        std::span<const evo::Candidate> xs) const = 0;
};

struct FitConfig {
    std::size_t trees = 100;
    std::uint64_t rng_seed = 0;
    bool bootstrap = true;  // off: every tree sees the full sample (memorizing)
};

// Bagged fully-grown regression trees, one ensemble per objective dimension.
class BaggedTreesModel final : public Regressor {
public:
    std::vector<moo::ObjectivePoint> predict(std::span<const evo::Candidate> xs) const override;
    moo::ObjectivePoint predict_one(const evo::Candidate& x) const;

    std::size_t input_dim() const { return input_dim_; }
    std::size_t training_size() const { return training_size_; }
    const std::vector<std::uint64_t>& tree_seeds() const { return tree_seeds_; }

private:
    friend BaggedTreesModel fit(const Dataset& data, const FitConfig& config);
    std::array<std::vector<RegressionTree>, 2> ensembles_;
    std::vector<std::uint64_t> tree_seeds_;
    std::size_t input_dim_ = 0;
    std::size_t training_size_ = 0;
};

BaggedTreesModel fit(const Dataset& data, const FitConfig& config = {});

}  // namespace pardensur::surrogate
