#include "pardensur/surrogate/model.hpp"

#include <numeric>
#include <stdexcept>

#include "pardensur/common/rng.hpp"

namespace pardensur::surrogate {

BaggedTreesModel fit(const Dataset& data, const FitConfig& config) {
    data.validate();
    if (data.size() < 2) throw std::invalid_argument("fit: dataset must have at least 2 samples");
    if (config.trees < 1) throw std::invalid_argument("fit: need at least one tree");

    const std::size_t n = data.size();
    std::vector<std::vector<double>> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = data.inputs[i].genes;

    BaggedTreesModel model;
    model.input_dim_ = data.inputs.front().dim();
    model.training_size_ = n;
    model.tree_seeds_.reserve(config.trees);
    for (std::size_t t = 0; t < config.trees; ++t)
        model.tree_seeds_.push_back(derive_seed(config.rng_seed, t));

    for (int obj = 0; obj < 2; ++obj) {
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i)
            ys[i] = obj == 0 ? data.targets[i].risk_pct : data.targets[i].return_pct;
        auto& ensemble = model.ensembles_[static_cast<std::size_t>(obj)];
        ensemble.resize(config.trees);
        std::vector<std::size_t> rows(n);
        for (std::size_t t = 0; t < config.trees; ++t) {
            if (config.bootstrap) {
                Rng rng(model.tree_seeds_[t]);
                for (auto& r : rows) r = static_cast<std::size_t>(rng.below(n));
            } else {
                std::iota(rows.begin(), rows.end(), std::size_t{0});
            }
            ensemble[t].fit(xs, ys, rows);
        }
    }
    return model;
}

moo::ObjectivePoint BaggedTreesModel::predict_one(const evo::Candidate& x) const {
    if (x.dim() != input_dim_)
        throw std::invalid_argument("predict: candidate dimension mismatch with training data");
    moo::ObjectivePoint out;
    for (int obj = 0; obj < 2; ++obj) {
        const auto& ensemble = ensembles_[static_cast<std::size_t>(obj)];
        double sum = 0.0;
        for (const auto& tree : ensemble) sum += tree.predict(x.genes);
        const double mean = sum / static_cast<double>(ensemble.size());
        (obj == 0 ? out.risk_pct : out.return_pct) = mean;
    }
    return out;
}

std::vector<moo::ObjectivePoint> BaggedTreesModel::predict(
    std::span<const evo::Candidate> xs) const {
    std::vector<moo::ObjectivePoint> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(predict_one(x));
    return out;
}

}  // namespace pardensur::surrogate
