#include "pardensur/port/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pardensur::port {

namespace {

// Root of q^2 + 1.5*t*C*q + beta = 0 with q >= 0, for beta <= 0.
double sqrt_quadratic_root(double tC, double beta) {
    const double half_b = 0.75 * tC;  // (1.5*t*C)/2
    const double disc = half_b * half_b - beta;
    return -half_b + std::sqrt(std::max(disc, 0.0));
}

}  // namespace

double prox_piecewise_cost(double v, double t, double p, double A, double C, double B) {
    if (!(t > 0.0)) throw std::invalid_argument("prox_piecewise_cost: t must be positive");

    // Subgradient limits of the full objective at the two kinks z = p, z = 0.
    auto trade_slope = [&](double z) {  // away from z == p
        const double w = z - p;
        return w > 0.0 ? A + 1.5 * C * std::sqrt(w) : -A - 1.5 * C * std::sqrt(-w);
    };
    auto lower_limit = [&](double z) {
        double d = (z - v) / t;
        d += (z == p) ? -A : trade_slope(z);
        if (z <= 0.0) d -= B;  // left limit at 0 includes the hinge slope
        return d;
    };
    auto upper_limit = [&](double z) {
        double d = (z - v) / t;
        d += (z == p) ? A : trade_slope(z);
        if (z < 0.0) d -= B;
        return d;
    };

    const double k_lo = std::min(p, 0.0);
    const double k_hi = std::max(p, 0.0);

    // Solve the smooth region with sign(z - p) = sig and hinge indicator chi.
    auto solve_region = [&](int sig, double chi) {
        if (sig > 0) {
            const double beta = p - v + t * (A - chi * B);
            const double q = sqrt_quadratic_root(t * C, beta);
            return p + q * q;
        }
        const double beta = p - v - t * (A + chi * B);  // requires beta >= 0
        const double q = sqrt_quadratic_root(t * C, -beta);
        return p - q * q;
    };

    if (lower_limit(k_lo) > 0.0) return solve_region(/*sig=*/-1, /*chi=*/1.0);
    if (upper_limit(k_lo) >= 0.0) return k_lo;
    if (k_hi > k_lo) {
        if (lower_limit(k_hi) > 0.0) {
            // Middle region: p < z < 0 (sig +1, hinge on) or 0 < z < p (sig -1, off).
            return p < 0.0 ? solve_region(+1, 1.0) : solve_region(-1, 0.0);
        }
        if (upper_limit(k_hi) >= 0.0) return k_hi;
    }
    return solve_region(+1, 0.0);
}

void project_box_sum(Eigen::VectorXd& x, const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                     double s_lo, double s_hi) {
    const Eigen::Index n = x.size();
    if (lb.size() != n || ub.size() != n)
        throw std::invalid_argument("project_box_sum: dimension mismatch");

    Eigen::VectorXd clipped = x.cwiseMax(lb).cwiseMin(ub);
    const double sum = clipped.sum();
    if (sum >= s_lo && sum <= s_hi) {
        x = clipped;
        return;
    }
    const double target = sum < s_lo ? s_lo : s_hi;

    auto shifted_sum = [&](double nu) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) s += std::clamp(x[i] - nu, lb[i], ub[i]);
        return s;
    };

    // Feasibility of the sum target against the box.
    double sum_lb = 0.0, sum_ub = 0.0;
    bool lb_finite = true, ub_finite = true;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::isinf(lb[i])) lb_finite = false; else sum_lb += lb[i];
        if (std::isinf(ub[i])) ub_finite = false; else sum_ub += ub[i];
        if (lb[i] > ub[i]) throw std::invalid_argument("project_box_sum: lb > ub");
    }
    if ((lb_finite && target < sum_lb - 1e-12) || (ub_finite && target > sum_ub + 1e-12))
        throw std::invalid_argument("project_box_sum: empty feasible set");

    // Bracket the monotone (nonincreasing) shifted sum, then bisect.
    double scale = std::abs(target) + 1.0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(x[i]));
    double lo = -scale, hi = scale;
    while (shifted_sum(lo) < target) lo = lo * 2.0 - 1.0;
    while (shifted_sum(hi) > target) hi = hi * 2.0 + 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (shifted_sum(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    // The sum is piecewise linear in nu; finish with one exact segment solve.
    double nu = 0.5 * (lo + hi);
    int free_count = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double z = x[i] - nu;
        if (z > lb[i] && z < ub[i]) ++free_count;
    }
    if (free_count > 0) nu += (shifted_sum(nu) - target) / static_cast<double>(free_count);
    for (Eigen::Index i = 0; i < n; ++i) x[i] = std::clamp(x[i] - nu, lb[i], ub[i]);
}

}  // namespace pardensur::port
