#include "pardensur/moo/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pardensur/moo/nondominated.hpp"

namespace pardensur::moo {

double hypervolume(std::span<const ObjectivePoint> points, ObjectivePoint ref) {
    require_finite(ref, "hypervolume");
    FrontierSet inside;
    for (const auto& p : points) {
        require_finite(p, "hypervolume");
        if (p.risk_pct < ref.risk_pct && p.return_pct > ref.return_pct) inside.push_back(p);
    }
    if (inside.empty()) return 0.0;
    FrontierSet front;
    for (std::size_t i : nondominated_filter(inside)) front.push_back(inside[i]);
    // Non-dominated and sorted by risk ascending => returns strictly ascending.
    std::sort(front.begin(), front.end(), [](const ObjectivePoint& a, const ObjectivePoint& b) {
        return a.risk_pct < b.risk_pct;
    });
    double hv = 0.0;
    for (std::size_t i = 0; i < front.size(); ++i) {
        const double next_risk = (i + 1 < front.size()) ? front[i + 1].risk_pct : ref.risk_pct;
        hv += (next_risk - front[i].risk_pct) * (front[i].return_pct - ref.return_pct);
    }
    return hv;
}

double dplus(const ObjectivePoint& a, const ObjectivePoint& z) {
    const auto fa = a.min_form(), fz = z.min_form();
    const double d0 = std::max(fa[0] - fz[0], 0.0);
    const double d1 = std::max(fa[1] - fz[1], 0.0);
    return std::sqrt(d0 * d0 + d1 * d1);
}

namespace {

double mean_min_dplus(std::span<const ObjectivePoint> outer, std::span<const ObjectivePoint> inner,
                      bool outer_is_target) {
    if (outer.empty() || inner.empty())
        throw std::invalid_argument("gd_plus/igd_plus: empty frontier set");
    double total = 0.0;
    for (const auto& o : outer) {
        require_finite(o, "gd_plus/igd_plus");
        double best = std::numeric_limits<double>::infinity();
        for (const auto& in : inner) {
            require_finite(in, "gd_plus/igd_plus");
            const double d = outer_is_target ? dplus(in, o) : dplus(o, in);
            best = std::min(best, d);
        }
        total += best;
    }
    return total / static_cast<double>(outer.size());
}

}  // namespace

double gd_plus(std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> target) {
    return mean_min_dplus(approx, target, /*outer_is_target=*/false);
}

double igd_plus(std::span<const ObjectivePoint> approx, std::span<const ObjectivePoint> target) {
    return mean_min_dplus(target, approx, /*outer_is_target=*/true);
}

}  // namespace pardensur::moo
