#include "pardensur/port/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pardensur/port/prox.hpp"

namespace pardensur::port {

namespace {

constexpr double kStepCap = 1e10;

double gershgorin_bound(const Eigen::MatrixXd& m) {
    double bound = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) bound = std::max(bound, m.row(i).cwiseAbs().sum());
    return bound;
}

void check_forecast(const PeriodForecast& f, const Eigen::Index n_plus_1) {
    if (f.mu.size() != n_plus_1 || f.sigma.rows() != n_plus_1 || f.sigma.cols() != n_plus_1 ||
        f.day_vol.size() != n_plus_1 - 1 || f.volume.size() != n_plus_1 - 1)
        throw std::invalid_argument("solver: forecast dimension mismatch");
    if (f.sigma.row(n_plus_1 - 1).cwiseAbs().maxCoeff() > 1e-12 ||
        f.sigma.col(n_plus_1 - 1).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("solver: cash row/column of sigma must be zero");
    if ((f.volume.array() < 0.0).any())
        throw std::invalid_argument("solver: negative forecast volume");
}

// The problem in risky coordinates: cash is eliminated through the budget
// constraint, trading/holding costs on cash are zero by construction.
struct Reduced {
    Eigen::Index n = 0;
    double gamma = 1.0;
    std::vector<Eigen::MatrixXd> sigma;      // per period
    std::vector<Eigen::VectorXd> mu_excess;  // mu_risky - mu_cash
    double spread_coef = 0.0;                // gamma_trade * half_spread
    std::vector<Eigen::VectorXd> impact;     // per link: gamma_trade * b * vol_i * sqrt(V/volume)
    double hold_coef = 0.0;                  // gamma_hold * borrow_cost
    Eigen::VectorXd prev;                    // previous risky weights
    Eigen::VectorXd lb, ub;
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    double lipschitz = 0.0;
    double value = 1.0;

    std::size_t periods() const { return sigma.size(); }
};

Reduced reduce(std::span<const PeriodForecast> forecasts, const TradeOffParams& params,
               const CostParams& costs, const ConstraintSet& cons, const PortfolioState& w_prev) {
    params.validate();
    costs.validate();
    w_prev.validate();
    if (forecasts.empty()) throw std::invalid_argument("solver: need at least one period");
    const Eigen::Index n1 = w_prev.weights.size();
    const Eigen::Index n = n1 - 1;

    Reduced r;
    r.n = n;
    r.gamma = params.gamma_risk;
    r.hold_coef = params.gamma_hold * costs.borrow_cost;
    r.spread_coef = params.gamma_trade * costs.half_spread;
    r.prev = w_prev.weights.head(n);
    r.value = w_prev.portfolio_value;

    double max_gersh = 0.0;
    for (const auto& f : forecasts) {
        check_forecast(f, n1);
        r.sigma.push_back(f.sigma.topLeftCorner(n, n));
        r.mu_excess.push_back(f.mu.head(n).array() - f.mu[n]);
        Eigen::VectorXd c(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double vol_floor = std::max(f.volume[i], kVolumeFloorFraction * r.value);
            c[i] = params.gamma_trade * costs.impact_coeff * f.day_vol[i] *
                   std::sqrt(r.value / vol_floor);
        }
        r.impact.push_back(std::move(c));
        max_gersh = std::max(max_gersh, gershgorin_bound(r.sigma.back()));
    }
    r.lipschitz = r.gamma * max_gersh;

    const double inf = std::numeric_limits<double>::infinity();
    r.lb = Eigen::VectorXd::Constant(n, cons.long_only ? 0.0 : -inf);
    r.ub = Eigen::VectorXd::Constant(n, cons.max_weight ? *cons.max_weight : inf);
    if (cons.long_only) r.s_hi = 1.0;                     // cash >= 0
    if (cons.max_cash) r.s_lo = 1.0 - *cons.max_cash;     // cash <= max_cash
    for (Eigen::Index i = 0; i < n; ++i)
        if (r.lb[i] > r.ub[i]) throw std::invalid_argument("solver: empty box");
    const double sum_lb = r.lb.allFinite() ? r.lb.sum() : -inf;
    const double sum_ub = r.ub.allFinite() ? r.ub.sum() : inf;
    if (sum_lb > r.s_hi + 1e-12 || sum_ub < r.s_lo - 1e-12)
        throw std::invalid_argument("solver: infeasible constraint set");
    return r;
}

// Minimization-form objective in risky coordinates over the whole plan.
double reduced_objective(const Reduced& r, const Eigen::VectorXd& plan) {
    const Eigen::Index n = r.n;
    double f = 0.0;
    for (std::size_t tau = 0; tau < r.periods(); ++tau) {
        const auto x = plan.segment(static_cast<Eigen::Index>(tau) * n, n);
        const auto prev = tau == 0
                              ? r.prev
                              : Eigen::VectorXd(plan.segment(static_cast<Eigen::Index>(tau - 1) * n, n));
        f += 0.5 * r.gamma * x.dot(r.sigma[tau] * x) - r.mu_excess[tau].dot(x);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double d = std::abs(x[i] - prev[i]);
            f += r.spread_coef * d + r.impact[tau][i] * d * std::sqrt(d);
            f += r.hold_coef * std::max(-x[i], 0.0);
        }
    }
    return f;
}

PortfolioState pack_state(const Eigen::VectorXd& risky, double value) {
    PortfolioState s;
    s.weights.resize(risky.size() + 1);
    s.weights.head(risky.size()) = risky;
    s.weights[risky.size()] = 1.0 - risky.sum();
    s.portfolio_value = value;
    return s;
}

class StallDetector {
public:
    StallDetector(double tol, int window) : tol_(tol), window_(window) {}
    bool push(double f) {
        values_.push_back(f);
        const std::size_t k = values_.size();
        if (window_ <= 0 || k <= static_cast<std::size_t>(window_)) return false;
        const double old = values_[k - 1 - static_cast<std::size_t>(window_)];
        return std::abs(f - old) <= tol_ * (1.0 + std::abs(f));
    }

private:
    double tol_;
    int window_;
    std::vector<double> values_;
};

}  // namespace

PeriodForecast PeriodForecast::validated(Eigen::VectorXd mu, Eigen::MatrixXd sigma,
                                         Eigen::VectorXd day_vol, Eigen::VectorXd volume) {
    const Eigen::Index n1 = mu.size();
    if (sigma.rows() != n1 || sigma.cols() != n1)
        throw std::invalid_argument("PeriodForecast: sigma dimension mismatch");
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + sigma.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("PeriodForecast: sigma not symmetric");
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    sigma.row(n1 - 1).setZero();
    sigma.col(n1 - 1).setZero();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma.topLeftCorner(n1 - 1, n1 - 1));
    if (es.eigenvalues().minCoeff() < -1e-10) {
        Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
        sigma.topLeftCorner(n1 - 1, n1 - 1) =
            es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    }
    PeriodForecast f;
    f.mu = std::move(mu);
    f.sigma = std::move(sigma);
    f.day_vol = std::move(day_vol);
    f.volume = std::move(volume);
    return f;
}

double spo_objective(const PeriodForecast& forecast, const TradeOffParams& params,
                     const CostParams& costs, const Eigen::VectorXd& w_prev,
                     const Eigen::VectorXd& w, double portfolio_value) {
    const Eigen::VectorXd u = w - w_prev;
    return forecast.mu.dot(w) - 0.5 * params.gamma_risk * w.dot(forecast.sigma * w) -
           params.gamma_trade *
               phi_trade(u, forecast.day_vol, forecast.volume, portfolio_value, costs) -
           params.gamma_hold * phi_hold(w, costs);
}

double mpo_objective(std::span<const PeriodForecast> forecasts, const TradeOffParams& params,
                     const CostParams& costs, const Eigen::VectorXd& w_prev,
                     std::span<const Eigen::VectorXd> plan, double portfolio_value) {
    if (forecasts.size() != plan.size())
        throw std::invalid_argument("mpo_objective: plan length mismatch");
    double total = 0.0;
    const Eigen::VectorXd* prev = &w_prev;
    for (std::size_t tau = 0; tau < plan.size(); ++tau) {
        total += spo_objective(forecasts[tau], params, costs, *prev, plan[tau], portfolio_value);
        prev = &plan[tau];
    }
    return total;
}

PortfolioState solve_spo(const PeriodForecast& forecast, const TradeOffParams& params,
                         const CostParams& costs, const ConstraintSet& cons,
                         const PortfolioState& w_prev, const SolverOptions& opts) {
    const Reduced r = reduce({&forecast, 1}, params, costs, cons, w_prev);
    const Eigen::Index n = r.n;
    const double t = std::min(1.0 / std::max(r.lipschitz, 1e-12), std::min(opts.step_cap, kStepCap));

    Eigen::VectorXd z = r.prev;
    Eigen::VectorXd xb(n), grad(n), sigma_x(n), v(n), xa(n);
    StallDetector stall(opts.stall_tol, opts.stall_window);
    double residual = std::numeric_limits<double>::infinity();
    for (long k = 0; k < opts.max_iterations; ++k) {
        xb = z;
        project_box_sum(xb, r.lb, r.ub, r.s_lo, r.s_hi);
        sigma_x.noalias() = r.sigma[0] * xb;
        grad = r.gamma * sigma_x - r.mu_excess[0];
        v = 2.0 * xb - z - t * grad;
        for (Eigen::Index i = 0; i < n; ++i)
            xa[i] = prox_piecewise_cost(v[i], t, r.prev[i], r.spread_coef, r.impact[0][i],
                                        r.hold_coef);
        z += xa - xb;
        residual = (xa - xb).lpNorm<Eigen::Infinity>() / (t * (1.0 + grad.lpNorm<Eigen::Infinity>()));
        if (residual <= opts.kkt_tol) return pack_state(xb, r.value);
        const double f = 0.5 * r.gamma * xb.dot(sigma_x) - r.mu_excess[0].dot(xb) +
                         [&] {
                             double c = 0.0;
                             for (Eigen::Index i = 0; i < n; ++i) {
                                 const double d = std::abs(xb[i] - r.prev[i]);
                                 c += r.spread_coef * d + r.impact[0][i] * d * std::sqrt(d);
                                 c += r.hold_coef * std::max(-xb[i], 0.0);
                             }
                             return c;
                         }();
        if (stall.push(f)) return pack_state(xb, r.value);
    }
    throw SolverError("solve_spo: no convergence within iteration limit",
                      pack_state(xb, r.value).weights, residual, opts.max_iterations);
}

namespace {

// Cyclic Dykstra evaluation of the proximal operator of the summed nonsmooth
// part: separable costs (first link + holds), odd links, even links, and the
// per-period constraint set.
class MpoProx {
public:
    explicit MpoProx(const Reduced& r) : r_(r) {
        const std::size_t H = r.periods();
        pieces_ = 2;  // separable + projection
        if (H >= 2) ++pieces_;
        if (H >= 3) ++pieces_;
        corrections_.assign(pieces_, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(H) * r.n));
    }

    Eigen::VectorXd operator()(const Eigen::VectorXd& v, double t, int max_cycles, double tol) {
        t_ = t;
        for (auto& q : corrections_) q.setZero();
        Eigen::VectorXd x = v;
        Eigen::VectorXd before(x.size());
        for (int cycle = 0; cycle < max_cycles; ++cycle) {
            before = x;
            int piece = 0;
            apply(x, piece++, [&](Eigen::VectorXd& y) { separable(y); });
            if (r_.periods() >= 2) apply(x, piece++, [&](Eigen::VectorXd& y) { links(y, 1); });
            if (r_.periods() >= 3) apply(x, piece++, [&](Eigen::VectorXd& y) { links(y, 2); });
            apply(x, piece++, [&](Eigen::VectorXd& y) { project(y); });
            if ((x - before).lpNorm<Eigen::Infinity>() <= tol) break;
        }
        return x;
    }

private:
    template <typename F>
    void apply(Eigen::VectorXd& x, int piece, F&& prox) {
        Eigen::VectorXd arg = x + corrections_[static_cast<std::size_t>(piece)];
        Eigen::VectorXd y = arg;
        prox(y);
        corrections_[static_cast<std::size_t>(piece)] = arg - y;
        x = std::move(y);
    }

    // First-link trade costs (against fixed previous weights) and holding
    // costs for every period: fully coordinate-separable.
    void separable(Eigen::VectorXd& y) {
        const Eigen::Index n = r_.n;
        for (Eigen::Index i = 0; i < n; ++i)
            y[i] = prox_piecewise_cost(y[i], t_, r_.prev[i], r_.spread_coef, r_.impact[0][i],
                                       r_.hold_coef);
        for (std::size_t tau = 1; tau < r_.periods(); ++tau) {
            const Eigen::Index off = static_cast<Eigen::Index>(tau) * n;
            for (Eigen::Index i = 0; i < n; ++i)
                y[off + i] = prox_piecewise_cost(y[off + i], t_, 0.0, 0.0, 0.0, r_.hold_coef);
        }
    }

    // Trade-cost links into periods tau = start, start+2, ...: disjoint pairs
    // (tau-1, tau), each reduced to a scalar prox on the difference.
    void links(Eigen::VectorXd& y, std::size_t start) {
        const Eigen::Index n = r_.n;
        for (std::size_t tau = start; tau < r_.periods(); tau += 2) {
            const Eigen::Index a = static_cast<Eigen::Index>(tau - 1) * n;
            const Eigen::Index b = static_cast<Eigen::Index>(tau) * n;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double dv = y[b + i] - y[a + i];
                const double d =
                    prox_piecewise_cost(dv, 2.0 * t_, 0.0, r_.spread_coef, r_.impact[tau][i], 0.0);
                const double shift = 0.5 * (d - dv);
                y[a + i] -= shift;
                y[b + i] += shift;
            }
        }
    }

    void project(Eigen::VectorXd& y) {
        const Eigen::Index n = r_.n;
        Eigen::VectorXd seg(n);
        for (std::size_t tau = 0; tau < r_.periods(); ++tau) {
            const Eigen::Index off = static_cast<Eigen::Index>(tau) * n;
            seg = y.segment(off, n);
            project_box_sum(seg, r_.lb, r_.ub, r_.s_lo, r_.s_hi);
            y.segment(off, n) = seg;
        }
    }

    const Reduced& r_;
    double t_ = 1.0;
    std::size_t pieces_;
    std::vector<Eigen::VectorXd> corrections_;
};

}  // namespace

std::vector<PortfolioState> solve_mpo(std::span<const PeriodForecast> forecasts,
                                      const TradeOffParams& params, const CostParams& costs,
                                      const ConstraintSet& cons, const PortfolioState& w_prev,
                                      const SolverOptions& opts,
                                      const std::vector<Eigen::VectorXd>* warm) {
    const Reduced r = reduce(forecasts, params, costs, cons, w_prev);
    const Eigen::Index n = r.n;
    const auto H = static_cast<Eigen::Index>(r.periods());
    // Oversized steps make the inner Dykstra ill-conditioned (the proximal
    // thresholds grow with t); keep t*costs on the weight scale.
    double cost_scale = r.spread_coef + r.hold_coef;
    for (const auto& c : r.impact) cost_scale = std::max(cost_scale, r.spread_coef + r.hold_coef + c.maxCoeff());
    double t = std::min(1.0 / std::max(r.lipschitz, 1e-12), std::min(opts.step_cap, kStepCap));
    if (cost_scale > 0.0) t = std::min(t, 0.25 / cost_scale);

    Eigen::VectorXd x(H * n);
    if (warm && static_cast<Eigen::Index>(warm->size()) == H &&
        (*warm)[0].size() == n) {
        for (Eigen::Index tau = 0; tau < H; ++tau) x.segment(tau * n, n) = (*warm)[static_cast<std::size_t>(tau)];
    } else {
        for (Eigen::Index tau = 0; tau < H; ++tau) x.segment(tau * n, n) = r.prev;
    }

    MpoProx prox(r);
    const int inner_cycles = opts.prox_max_cycles;
    const double inner_tol = 1e-12 * (1.0 + x.lpNorm<Eigen::Infinity>());

    Eigen::VectorXd y = x, x_new(H * n), grad(H * n), v(H * n);
    double theta = 1.0;
    StallDetector stall(opts.stall_tol, opts.stall_window);
    double residual = std::numeric_limits<double>::infinity();
    double best_residual = residual;
    long last_rescue = 0;

    auto pack_plan = [&](const Eigen::VectorXd& plan) {
        std::vector<PortfolioState> out;
        out.reserve(static_cast<std::size_t>(H));
        for (Eigen::Index tau = 0; tau < H; ++tau) {
            Eigen::VectorXd seg = plan.segment(tau * n, n);
            project_box_sum(seg, r.lb, r.ub, r.s_lo, r.s_hi);
            out.push_back(pack_state(seg, r.value));
        }
        return out;
    };

    for (long k = 0; k < opts.max_iterations; ++k) {
        for (Eigen::Index tau = 0; tau < H; ++tau) {
            const auto yt = y.segment(tau * n, n);
            grad.segment(tau * n, n) =
                r.gamma * (r.sigma[static_cast<std::size_t>(tau)] * yt) -
                r.mu_excess[static_cast<std::size_t>(tau)];
        }
        v = y - t * grad;
        x_new = prox(v, t, inner_cycles, inner_tol);
        residual = (x_new - y).lpNorm<Eigen::Infinity>() /
                   (t * (1.0 + grad.lpNorm<Eigen::Infinity>()));
        if (residual <= opts.kkt_tol) return pack_plan(x_new);
        if (stall.push(reduced_objective(r, x_new))) return pack_plan(x_new);

        // Gradient-based adaptive restart of the momentum sequence.
        if ((y - x_new).dot(x_new - x) > 0.0) theta = 1.0;
        const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        y = x_new + ((theta - 1.0) / theta_next) * (x_new - x);
        x = x_new;
        theta = theta_next;

        // Rescue a stagnating residual by shrinking the step.
        best_residual = std::min(best_residual, residual);
        if (k - last_rescue >= 2000) {
            if (residual > 0.9 * best_residual && t > 1e-6) {
                t *= 0.5;
                y = x;
                theta = 1.0;
            }
            last_rescue = k;
            best_residual = residual;
        }
    }
    throw SolverError("solve_mpo: no convergence within iteration limit",
                      pack_plan(x).front().weights, residual, opts.max_iterations);
}

}  // namespace pardensur::port
