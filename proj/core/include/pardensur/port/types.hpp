#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

namespace pardensur::port {

// n risky assets plus cash in the last slot; weights sum to one.
struct PortfolioState {
    Eigen::VectorXd weights;
    double portfolio_value = 1.0;

    std::size_t risky_count() const { return static_cast<std::size_t>(weights.size()) - 1; }

    static PortfolioState all_cash(std::size_t n_risky, double value = 1.0) {
        PortfolioState s;
        s.weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_risky) + 1);
        s.weights[static_cast<Eigen::Index>(n_risky)] = 1.0;
        s.portfolio_value = value;
        return s;
    }

    void validate() const {
        if (weights.size() < 2) throw std::invalid_argument("PortfolioState: need >= 1 asset + cash");
        if (!weights.allFinite() || !std::isfinite(portfolio_value))
            throw std::invalid_argument("PortfolioState: non-finite");
        if (std::abs(weights.sum() - 1.0) > 1e-9)
            throw std::invalid_argument("PortfolioState: weights must sum to 1");
    }
};

// Per-period inputs: expected returns (cash last), return covariance with a
// zero cash row/column, and per-asset daily volatility / traded value used by
// the trading cost model.
struct PeriodForecast {
    Eigen::VectorXd mu;       // n+1
    Eigen::MatrixXd sigma;    // (n+1) x (n+1), PSD
    Eigen::VectorXd day_vol;  // n
    Eigen::VectorXd volume;   // n

    // Symmetrizes sigma, clips negative eigenvalues at zero, zeroes the cash
    // row/column. Use on externally supplied forecasts.
    static PeriodForecast validated(Eigen::VectorXd mu, Eigen::MatrixXd sigma,
                                    Eigen::VectorXd day_vol, Eigen::VectorXd volume);

    std::size_t risky_count() const { return static_cast<std::size_t>(mu.size()) - 1; }
};

struct TradeOffParams {
    double gamma_risk = 1.0;
    double gamma_trade = 0.0;
    double gamma_hold = 0.0;

    void validate() const {
        if (!(gamma_risk > 0.0) || gamma_trade < 0.0 || gamma_hold < 0.0 ||
            !std::isfinite(gamma_risk) || !std::isfinite(gamma_trade) || !std::isfinite(gamma_hold))
            throw std::invalid_argument("TradeOffParams: gamma_risk > 0, others >= 0 required");
    }
};

struct CostParams {
    double half_spread = 0.00025;  // half of a 0.05% bid-ask spread
    double impact_coeff = 1.0;     // b in the 3/2-power market impact term
    double borrow_cost = 0.0001;   // 0.01% per day on short exposure

    void validate() const {
        if (half_spread < 0.0 || impact_coeff < 0.0 || borrow_cost < 0.0)
            throw std::invalid_argument("CostParams: all parameters must be >= 0");
    }
};

struct ConstraintSet {
    bool long_only = true;
    std::optional<double> max_weight;  // per risky asset
    std::optional<double> max_cash;
};

}  // namespace pardensur::port
