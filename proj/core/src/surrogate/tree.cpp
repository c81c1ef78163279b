#include "pardensur/surrogate/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pardensur::surrogate {

void RegressionTree::fit(std::span<const std::vector<double>> xs, std::span<const double> ys,
                         std::span<const std::size_t> rows) {
    if (rows.empty()) throw std::invalid_argument("RegressionTree: no rows");
    nodes_.clear();
    std::vector<std::size_t> work(rows.begin(), rows.end());
    build(xs, ys, work, 0, work.size());
}

int RegressionTree::build(std::span<const std::vector<double>> xs, std::span<const double> ys,
                          std::vector<std::size_t>& rows, std::size_t begin, std::size_t end) {
    const std::size_t n = end - begin;
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += ys[rows[i]];
    const double mean = sum / static_cast<double>(n);

    bool pure = true;
    for (std::size_t i = begin; i < end && pure; ++i) pure = ys[rows[i]] == ys[rows[begin]];

    const int node_id = static_cast<int>(nodes_.size());
    nodes_.push_back(Node{});
    nodes_[node_id].value = mean;
    if (n < 2 || pure) return node_id;

    // Best split by SSE reduction: per feature, sort rows and scan prefix sums.
    const std::size_t dim = xs[rows[begin]].size();
    double parent_sse = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
        const double d = ys[rows[i]] - mean;
        parent_sse += d * d;
    }
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_sse = parent_sse - 1e-12 * (1.0 + std::abs(parent_sse));
    std::vector<std::size_t> sorted(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                    rows.begin() + static_cast<std::ptrdiff_t>(end));
    for (std::size_t f = 0; f < dim; ++f) {
        std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            return xs[a][f] < xs[b][f];
        });
        double left_sum = 0.0, left_sq = 0.0;
        double right_sum = 0.0, right_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            right_sum += ys[sorted[i]];
            right_sq += ys[sorted[i]] * ys[sorted[i]];
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double y = ys[sorted[i]];
            left_sum += y;
            left_sq += y * y;
            right_sum -= y;
            right_sq -= y * y;
            const double xl = xs[sorted[i]][f], xr = xs[sorted[i + 1]][f];
            if (xl == xr) continue;
            const double nl = static_cast<double>(i + 1);
            const double nr = static_cast<double>(n - i - 1);
            const double sse = (left_sq - left_sum * left_sum / nl) +
                               (right_sq - right_sum * right_sum / nr);
            if (sse < best_sse) {
                best_sse = sse;
                best_feature = static_cast<int>(f);
                best_threshold = xl + 0.5 * (xr - xl);
            }
        }
    }
    if (best_feature < 0) return node_id;  // no informative split

    auto mid_it = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                 rows.begin() + static_cast<std::ptrdiff_t>(end),
                                 [&](std::size_t r) {
                                     return xs[r][static_cast<std::size_t>(best_feature)] <=
                                            best_threshold;
                                 });
    const std::size_t mid = static_cast<std::size_t>(mid_it - rows.begin());
    if (mid == begin || mid == end) return node_id;  // numerically degenerate split

    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    const int left = build(xs, ys, rows, begin, mid);
    nodes_[node_id].left = left;
    const int right = build(xs, ys, rows, mid, end);
    nodes_[node_id].right = right;
    return node_id;
}

double RegressionTree::predict(std::span<const double> x) const {
    if (nodes_.empty()) throw std::logic_error("RegressionTree: predict before fit");
    int id = 0;
    while (nodes_[static_cast<std::size_t>(id)].feature >= 0) {
        const Node& nd = nodes_[static_cast<std::size_t>(id)];
        id = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
    }
    return nodes_[static_cast<std::size_t>(id)].value;
}

}  // namespace pardensur::surrogate
