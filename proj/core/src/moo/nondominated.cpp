#include "pardensur/moo/nondominated.hpp"

#include <algorithm>
#include <limits>

namespace pardensur::moo {

std::vector<int> nondominated_sort(std::span<const ObjectivePoint> points) {
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("nondominated_sort: empty input");
    for (const auto& p : points) require_finite(p, "nondominated_sort");

    // Deb's count/list scheme.
    std::vector<std::vector<std::size_t>> dominated(n);
    std::vector<int> count(n, 0);
    std::vector<int> rank(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(points[i], points[j])) {
                dominated[i].push_back(j);
                ++count[j];
            } else if (dominates(points[j], points[i])) {
                dominated[j].push_back(i);
                ++count[i];
            }
        }
    }
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < n; ++i)
        if (count[i] == 0) front.push_back(i);
    int level = 0;
    while (!front.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t i : front) {
            rank[i] = level;
            for (std::size_t j : dominated[i])
                if (--count[j] == 0) next.push_back(j);
        }
        front = std::move(next);
        ++level;
    }
    return rank;
}

std::vector<std::size_t> nondominated_filter(std::span<const ObjectivePoint> points) {
    const std::size_t n = points.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    // Sort by (risk asc, return desc); sweep keeping strictly improving return.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].risk_pct != points[b].risk_pct) return points[a].risk_pct < points[b].risk_pct;
        return points[a].return_pct > points[b].return_pct;
    });
    std::vector<std::size_t> keep;
    double best_ret = -std::numeric_limits<double>::infinity();
    double last_risk = std::numeric_limits<double>::quiet_NaN();
    double last_ret = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t idx : order) {
        const auto& p = points[idx];
        require_finite(p, "nondominated_filter");
        if (p.risk_pct == last_risk && p.return_pct == last_ret) continue;  // exact duplicate
        if (p.return_pct > best_ret) {
            keep.push_back(idx);
            best_ret = p.return_pct;
            last_risk = p.risk_pct;
            last_ret = p.return_pct;
        }
    }
    std::sort(keep.begin(), keep.end());
    return keep;
}

std::vector<double> crowding_distance(std::span<const ObjectivePoint> front) {
    const std::size_t n = front.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    std::vector<std::size_t> order(n);
    for (int obj = 0; obj < 2; ++obj) {
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return front[a].min_form()[obj] < front[b].min_form()[obj];
        });
        const double lo = front[order.front()].min_form()[obj];
        const double hi = front[order.back()].min_form()[obj];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        const double range = hi - lo;
        if (range <= 0.0) continue;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            if (dist[order[k]] == inf) continue;
            const double gap =
                front[order[k + 1]].min_form()[obj] - front[order[k - 1]].min_form()[obj];
            dist[order[k]] += gap / range;
        }
    }
    return dist;
}

}  // namespace pardensur::moo
