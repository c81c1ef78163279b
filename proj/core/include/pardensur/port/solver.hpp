#pragma once

#include <span>
#include <vector>

#include "pardensur/port/costs.hpp"
#include "pardensur/port/types.hpp"

namespace pardensur::port {

struct SolverOptions {
    double kkt_tol = 1e-8;       // relative fixed-point residual
    double stall_tol = 1e-10;    // objective change over stall_window iterations
    int stall_window = 50;
    long max_iterations = 100000;
    double step_cap = 1e10;      // upper bound on the proximal step size
    int prox_max_cycles = 200;   // inner Dykstra cycles per proximal evaluation
};

class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& msg, Eigen::VectorXd best, double residual, long iterations)
        : std::runtime_error(msg), best_weights(std::move(best)), residual(residual),
          iterations(iterations) {}
    Eigen::VectorXd best_weights;  // n+1, cash last
    double residual;
    long iterations;
};

// Single-period objective (maximization form) at full weights w (n+1):
// mu'w - gamma/2 w'Sigma w - gamma_trade*phi_trade(w - w_prev) - gamma_hold*phi_hold(w).
double spo_objective(const PeriodForecast& forecast, const TradeOffParams& params,
                     const CostParams& costs, const Eigen::VectorXd& w_prev,
                     const Eigen::VectorXd& w, double portfolio_value);

// Summed multi-period objective over a plan of H weight vectors.
double mpo_objective(std::span<const PeriodForecast> forecasts, const TradeOffParams& params,
                     const CostParams& costs, const Eigen::VectorXd& w_prev,
                     std::span<const Eigen::VectorXd> plan, double portfolio_value);

// Single-period solve by three-operator (Davis-Yin) splitting in the risky
// coordinates: smooth quadratic, closed-form separable cost prox, and exact
// projection onto the budget/box set.
PortfolioState solve_spo(const PeriodForecast& forecast, const TradeOffParams& params,
                         const CostParams& costs, const ConstraintSet& cons,
                         const PortfolioState& w_prev, const SolverOptions& opts = {});

// H-period solve by accelerated proximal gradient; the nonsmooth part
// (per-period costs, inter-period trade links, constraint set) is resolved by
// cyclic Dykstra alternation. H = 1 matches solve_spo. `warm` optionally
// seeds the plan (risky weights per period).
std::vector<PortfolioState> solve_mpo(std::span<const PeriodForecast> forecasts,
                                      const TradeOffParams& params, const CostParams& costs,
                                      const ConstraintSet& cons, const PortfolioState& w_prev,
                                      const SolverOptions& opts = {},
                                      const std::vector<Eigen::VectorXd>* warm = nullptr);

}  // namespace pardensur::port
