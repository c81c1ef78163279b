#pragma once

#include <cstdint>
#include <memory>

#include "pardensur/bt/market_data.hpp"
#include "pardensur/evo/candidate.hpp"
#include "pardensur/moo/objective_point.hpp"
#include "pardensur/port/solver.hpp"

namespace pardensur::bt {

struct BacktestConfig {
    int horizon = 2;          // planning periods per day, first trade executed
    int burn_in = 250;        // days reserved for the estimators
    double noise_scale = 1.0; // forecast noise multiplier on rolling vol
    int cov_window = 250;
    int ma_window = 10;
    int annualization_days = 250;
    double initial_value = 1e6;  // reporting scale; dynamics run at unit notional
    double cash_return = 0.0;    // per day
    double cov_shrinkage = 0.1;

    void validate() const {
        if (horizon < 1) throw std::invalid_argument("BacktestConfig: horizon must be >= 1");
        if (burn_in < std::max(cov_window, ma_window))
            throw std::invalid_argument("BacktestConfig: burn_in must cover the estimator windows");
        if (!(noise_scale >= 0.0))
            throw std::invalid_argument("BacktestConfig: noise_scale must be >= 0");
    }
};

// Gene decode boxes: log10-uniform maps from [0, 1] onto each box.
struct DecodeBoxes {
    double risk_lo = 0.1, risk_hi = 1000.0;
    double trade_lo = 0.5, trade_hi = 100.0;
    double hold_lo = 0.1, hold_hi = 100.0;
};

port::TradeOffParams decode_hyperparams(const evo::Candidate& candidate,
                                        const DecodeBoxes& boxes = {});

struct BacktestResult {
    std::vector<double> daily_returns;  // net of costs, post burn-in
    moo::ObjectivePoint objectives;
    std::vector<double> turnover;  // per-day sum of absolute risky trades
    std::uint64_t evaluation_seed = 0;
    std::vector<double> value_series;  // in currency (initial_value scaled)
};

// (std * sqrt(annualization) * 100, mean * annualization * 100); std uses
// ddof 1 and is 0 for fewer than two observations.
moo::ObjectivePoint annualize_objectives(std::span<const double> daily_returns,
                                         int annualization_days);

class BacktestError : public std::runtime_error {
public:
    BacktestError(const std::string& msg, int day_index)
        : std::runtime_error(msg), day_index(day_index) {}
    int day_index;
};

// Rolling-horizon simulator. The forecast panel (noisy return forecasts,
// moving-average vol/volume, rolling covariances) depends only on
// (data, config, seed), so one Backtester serves every hyper-parameter
// evaluation of a search run. Immutable after construction; evaluate() is
// safe to call concurrently.
class Backtester {
public:
    Backtester(MarketData data, BacktestConfig config, port::CostParams costs,
               port::ConstraintSet cons, std::uint64_t seed);
    ~Backtester();
    Backtester(Backtester&&) noexcept;
    Backtester& operator=(Backtester&&) noexcept;

    BacktestResult evaluate(const port::TradeOffParams& params) const;
    moo::ObjectivePoint evaluate_candidate(const evo::Candidate& candidate,
                                           const DecodeBoxes& boxes = {}) const;

    const MarketData& data() const;
    const BacktestConfig& config() const;

private:
    struct Panel;
    std::unique_ptr<Panel> panel_;
};

// One-shot convenience around Backtester.
BacktestResult run_backtest(const MarketData& data, const port::TradeOffParams& params,
                            const BacktestConfig& config, const port::CostParams& costs,
                            const port::ConstraintSet& cons, std::uint64_t seed);

}  // namespace pardensur::bt
