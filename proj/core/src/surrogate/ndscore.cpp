#include "pardensur/surrogate/ndscore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "pardensur/moo/nondominated.hpp"

namespace pardensur::surrogate {

namespace {

double tied_pairs(std::span<const int> sorted) {
    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        total += t * (t - 1.0) / 2.0;
        i = j;
    }
    return total;
}

// Counts strict inversions while merge-sorting `v`.
double merge_count(std::vector<int>& v, std::vector<int>& tmp, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0.0;
    const std::size_t mid = lo + (hi - lo) / 2;
    double swaps = merge_count(v, tmp, lo, mid) + merge_count(v, tmp, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            swaps += static_cast<double>(mid - i);
            tmp[k++] = v[j++];
        } else {
            tmp[k++] = v[i++];
        }
    }
    while (i < mid) tmp[k++] = v[i++];
    while (j < hi) tmp[k++] = v[j++];
    std::copy(tmp.begin() + static_cast<std::ptrdiff_t>(lo),
              tmp.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

}  // namespace

std::optional<double> kendall_tau_b(std::span<const int> r, std::span<const int> r_hat) {
    if (r.size() != r_hat.size()) throw std::invalid_argument("kendall_tau_b: length mismatch");
    const std::size_t n = r.size();
    if (n < 2) throw std::invalid_argument("kendall_tau_b: need at least 2 observations");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r[a] != r[b]) return r[a] < r[b];
        return r_hat[a] < r_hat[b];
    });

    double ties_x = 0.0, ties_xy = 0.0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && r[order[j]] == r[order[i]]) ++j;
            const double t = static_cast<double>(j - i);
            ties_x += t * (t - 1.0) / 2.0;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a;
                while (b < j && r_hat[order[b]] == r_hat[order[a]]) ++b;
                const double u = static_cast<double>(b - a);
                ties_xy += u * (u - 1.0) / 2.0;
                a = b;
            }
            i = j;
        }
    }

    std::vector<int> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = r_hat[order[i]];
    std::vector<int> tmp(n);
    const double exchanges = merge_count(ys, tmp, 0, n);
    const double ties_y = tied_pairs(ys);  // ys is sorted now

    const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    const double denom = std::sqrt((n0 - ties_x) * (n0 - ties_y));
    if (denom <= 0.0) return std::nullopt;
    const double con_minus_dis = n0 - ties_x - ties_y + ties_xy - 2.0 * exchanges;
    return con_minus_dis / denom;
}

double nd_score(const Dataset& data, std::size_t k, const FitFn& fitter, Rng& rng) {
    data.validate();
    if (k < 1) throw std::invalid_argument("nd_score: k must be >= 1");
    const std::size_t n = data.size();
    if (k == 1) {
        if (n < 2) throw std::invalid_argument("nd_score: need at least 2 samples");
    } else if (n < 2 * k) {
        throw std::invalid_argument("nd_score: need at least 2k samples");
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    rng.shuffle(idx);

    double total = 0.0;
    std::size_t valid_folds = 0;
    std::size_t start = 0;
    for (std::size_t fold = 0; fold < k; ++fold) {
        const std::size_t fold_size = n / k + (fold < n % k ? 1 : 0);
        const std::size_t stop = (k == 1) ? n : start + fold_size;

        Dataset train;
        Dataset val;
        for (std::size_t i = 0; i < n; ++i) {
            const bool in_val = i >= start && i < stop;
            if (in_val) val.add(data.inputs[idx[i]], data.targets[idx[i]]);
            if (!in_val || k == 1) train.add(data.inputs[idx[i]], data.targets[idx[i]]);
        }
        start = stop;

        const auto model = fitter(train);
        const auto preds = model->predict(val.inputs);
        const auto true_ranks = moo::nondominated_sort(val.targets);
        const auto pred_ranks = moo::nondominated_sort(preds);
        if (auto tau = kendall_tau_b(true_ranks, pred_ranks)) {
            total += (*tau + 1.0) / 2.0;
            ++valid_folds;
        }
    }
    return valid_folds == 0 ? 0.5 : total / static_cast<double>(valid_folds);
}

double nd_score(const Dataset& data, std::size_t k, const FitConfig& config, Rng& rng) {
    FitFn fitter = [&config](const Dataset& train) -> std::unique_ptr<Regressor> {
        return std::make_unique<BaggedTreesModel>(fit(train, config));
    };
    return nd_score(data, k, fitter, rng);
}

}  // namespace pardensur::surrogate
