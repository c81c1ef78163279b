#pragma once

// Independent reference implementations used as oracles by the test suites.
// These deliberately use different algorithms than the library.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "pardensur/common/rng.hpp"
#include "pardensur/moo/objective_point.hpp"

namespace oracle {

using pardensur::moo::ObjectivePoint;

inline bool dominates_min(const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

// Non-dominated ranks by repeated peeling with a direct pairwise scan.
inline std::vector<int> peel_ranks(const std::vector<ObjectivePoint>& pts) {
    const std::size_t n = pts.size();
    std::vector<int> rank(n, -1);
    int level = 0;
    std::size_t assigned = 0;
    while (assigned < n) {
        std::vector<std::size_t> front;
        for (std::size_t i = 0; i < n; ++i) {
            if (rank[i] >= 0) continue;
            bool dominated = false;
            for (std::size_t j = 0; j < n && !dominated; ++j) {
                if (i == j || rank[j] >= 0) continue;
                dominated = dominates_min(pts[j].min_form(), pts[i].min_form());
            }
            if (!dominated) front.push_back(i);
        }
        for (std::size_t i : front) rank[i] = level;
        assigned += front.size();
        ++level;
    }
    return rank;
}

// Exact 2-D hypervolume by coordinate-compressed cell marking.
inline double hv_grid(const std::vector<ObjectivePoint>& pts, ObjectivePoint ref) {
    std::vector<double> xs{ref.risk_pct}, ys{ref.return_pct};
    for (const auto& p : pts) {
        if (p.risk_pct < ref.risk_pct && p.return_pct > ref.return_pct) {
            xs.push_back(p.risk_pct);
            ys.push_back(p.return_pct);
        }
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            // Cell [xs[i], xs[i+1]] x [ys[j], ys[j+1]]; dominated iff some point
            // has risk <= left edge and return >= top edge.
            bool covered = false;
            for (const auto& p : pts)
                if (p.risk_pct <= xs[i] && p.return_pct >= ys[j + 1]) {
                    covered = true;
                    break;
                }
            if (covered) area += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
        }
    }
    return area;
}

// Kendall tau-b by direct pair counting.
inline double tau_b_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    double concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const int da = a[i] - a[j], db = b[i] - b[j];
            if (da == 0 && db == 0) continue;
            else if (da == 0) ++ties_a;
            else if (db == 0) ++ties_b;
            else if ((da > 0) == (db > 0)) ++concordant;
            else ++discordant;
        }
    }
    const double denom = std::sqrt((concordant + discordant + ties_a) *
                                   (concordant + discordant + ties_b));
    return (concordant - discordant) / denom;
}

// One-sided Mann-Whitney p by brute-force enumeration of all C(n+m, n)
// labelings of the pooled sample.
inline double mw_enumerate(const std::vector<double>& x, const std::vector<double>& y,
                           bool x_greater) {
    std::vector<double> pooled = x;
    pooled.insert(pooled.end(), y.begin(), y.end());
    const std::size_t total = pooled.size(), nx = x.size();
    auto u_stat = [&](const std::vector<std::size_t>& xidx) {
        std::vector<bool> in_x(total, false);
        for (std::size_t i : xidx) in_x[i] = true;
        double u = 0.0;
        for (std::size_t i = 0; i < total; ++i) {
            if (!in_x[i]) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (in_x[j]) continue;
                if (pooled[i] > pooled[j]) u += 1.0;
                else if (pooled[i] == pooled[j]) u += 0.5;
            }
        }
        return u;
    };
    std::vector<std::size_t> obs_idx(nx);
    for (std::size_t i = 0; i < nx; ++i) obs_idx[i] = i;
    const double u_obs = u_stat(obs_idx);

    std::vector<std::size_t> comb(nx);
    for (std::size_t i = 0; i < nx; ++i) comb[i] = i;
    double tail = 0.0, count = 0.0;
    while (true) {
        const double u = u_stat(comb);
        count += 1.0;
        if (x_greater ? u >= u_obs - 1e-12 : u <= u_obs + 1e-12) tail += 1.0;
        // next combination
        std::size_t k = nx;
        while (k > 0 && comb[k - 1] == total - nx + k - 1) --k;
        if (k == 0) break;
        ++comb[k - 1];
        for (std::size_t i = k; i < nx; ++i) comb[i] = comb[i - 1] + 1;
    }
    return tail / count;
}

// Survival function of the chi-square distribution.
inline double chi2_sf(double stat, double dof) {
    return boost::math::gamma_q(dof / 2.0, stat / 2.0);
}

// Markowitz solution with only the budget constraint: solve the linear KKT
// system [gamma*Sigma, 1; 1', 0] [w; nu] = [mu; 1].
inline Eigen::VectorXd markowitz_kkt(const Eigen::MatrixXd& sigma, const Eigen::VectorXd& mu,
                                     double gamma) {
    const Eigen::Index n = mu.size();
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
    kkt.topLeftCorner(n, n) = gamma * sigma;
    kkt.topRightCorner(n, 1).setOnes();
    kkt.bottomLeftCorner(1, n).setOnes();
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = mu;
    rhs[n] = 1.0;
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    return sol.head(n);
}

// ZDT1: 30 genes, f1 = x0, f2 = g * (1 - sqrt(x0/g)), g = 1 + 9*mean(rest).
inline ObjectivePoint zdt1(const std::vector<double>& genes) {
    const double f1 = genes[0];
    double s = 0.0;
    for (std::size_t i = 1; i < genes.size(); ++i) s += genes[i];
    const double g = 1.0 + 9.0 * s / static_cast<double>(genes.size() - 1);
    const double f2 = g * (1.0 - std::sqrt(f1 / g));
    return {f1, -f2};  // both minimized: map f2 through the return axis
}

inline std::vector<ObjectivePoint> zdt1_true_front(std::size_t count) {
    std::vector<ObjectivePoint> front;
    front.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f1 = static_cast<double>(i) / static_cast<double>(count - 1);
        front.push_back({f1, -(1.0 - std::sqrt(f1))});
    }
    return front;
}

// Mean absolute polynomial-mutation perturbation at x = 0.5 on [0, 1] by
// quadrature over the generating uniform variate.
inline double pm_mean_abs_delta(double eta, std::size_t steps = 2000000) {
    const double mut_pow = 1.0 / (eta + 1.0);
    double total = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(steps);
        double delta;
        if (u < 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(0.5, eta + 1.0);
            delta = std::pow(val, mut_pow) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(0.5, eta + 1.0);
            delta = 1.0 - std::pow(val, mut_pow);
        }
        total += std::abs(delta);  // bounds [0, 1]: the perturbation equals delta_q
    }
    return total / static_cast<double>(steps);
}

}  // namespace oracle
