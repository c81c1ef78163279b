#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pardensur::surrogate {

// Fully grown CART regression tree (splits until pure or unsplittable),
// axis-aligned splits minimizing sum of squared errors.
class RegressionTree {
public:
    // rows: sample indices into xs/ys (bootstrap resamples repeat indices).
    void fit(std::span<const std::vector<double>> xs, std::span<const double> ys,
             std::span<const std::size_t> rows);

    double predict(std::span<const double> x) const;

    bool fitted() const { return !nodes_.empty(); }

private:
    struct Node {
        int feature = -1;       // -1 for leaves
        double threshold = 0.0;  // go left if x[feature] <= threshold
        int left = -1;
        int right = -1;
        double value = 0.0;  // leaf prediction
    };
    std::vector<Node> nodes_;

    int build(std::span<const std::vector<double>> xs, std::span<const double> ys,
              std::vector<std::size_t>& rows, std::size_t begin, std::size_t end);
};

}  // namespace pardensur::surrogate
