#include "pardensur/bt/backtest.hpp"

#include <cmath>

#include "pardensur/bt/forecast.hpp"
#include "pardensur/port/costs.hpp"

namespace pardensur::bt {

port::TradeOffParams decode_hyperparams(const evo::Candidate& candidate,
                                        const DecodeBoxes& boxes) {
    if (candidate.dim() != 3)
        throw std::invalid_argument("decode_hyperparams: expected 3 genes");
    auto log_map = [](double gene, double lo, double hi) {
        return std::pow(10.0, std::log10(lo) + gene * (std::log10(hi) - std::log10(lo)));
    };
    port::TradeOffParams p;
    p.gamma_risk = log_map(candidate.genes[0], boxes.risk_lo, boxes.risk_hi);
    p.gamma_trade = log_map(candidate.genes[1], boxes.trade_lo, boxes.trade_hi);
    p.gamma_hold = log_map(candidate.genes[2], boxes.hold_lo, boxes.hold_hi);
    return p;
}

moo::ObjectivePoint annualize_objectives(std::span<const double> daily_returns,
                                         int annualization_days) {
    const std::size_t n = daily_returns.size();
    if (n == 0) throw std::invalid_argument("annualize_objectives: empty series");
    double mean = 0.0;
    for (double r : daily_returns) mean += r;
    mean /= static_cast<double>(n);
    double var = 0.0;
    if (n >= 2) {
        for (double r : daily_returns) var += (r - mean) * (r - mean);
        var /= static_cast<double>(n - 1);
    }
    const double ann = static_cast<double>(annualization_days);
    return {std::sqrt(var) * std::sqrt(ann) * 100.0, mean * ann * 100.0};
}

struct Backtester::Panel {
    MarketData data;
    BacktestConfig config;
    port::CostParams costs;
    port::ConstraintSet cons;
    std::uint64_t seed = 0;

    // Realized quantities per day.
    Eigen::MatrixXd returns;   // [day][asset]; row 0 unused
    Eigen::MatrixXd day_vol;   // realized |log close/open|
    Eigen::MatrixXd volume;    // realized traded value
    // Decision-day forecasts (valid for t in [burn_in, days-2]).
    std::vector<port::PeriodForecast> forecast;
};

Backtester::Backtester(MarketData data, BacktestConfig config, port::CostParams costs,
                       port::ConstraintSet cons, std::uint64_t seed)
    : panel_(std::make_unique<Panel>()) {
    data.validate();
    config.validate();
    costs.validate();
    const auto days = static_cast<Eigen::Index>(data.days());
    const auto n = static_cast<Eigen::Index>(data.n_assets());
    if (days <= config.burn_in + 1)
        throw std::invalid_argument("Backtester: data span must exceed burn_in + 1 days");

    Panel& p = *panel_;
    p.config = config;
    p.costs = costs;
    p.cons = cons;
    p.seed = seed;

    p.returns.setZero(days, n);
    p.day_vol.setZero(days, n);
    p.volume.setZero(days, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const auto au = static_cast<std::size_t>(a);
        for (Eigen::Index t = 0; t < days; ++t) {
            const auto tu = static_cast<std::size_t>(t);
            if (t >= 1)
                p.returns(t, a) = data.close[au][tu] / data.close[au][tu - 1] - 1.0;
            p.day_vol(t, a) = estimate_volatility(data.open[au][tu], data.close[au][tu]);
            p.volume(t, a) = data.volume[au][tu];
        }
    }

    // Moving-average vol and volume forecasts per asset.
    Eigen::MatrixXd vol_ma(days, n), volume_ma(days, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        std::vector<double> v(static_cast<std::size_t>(days)), w(static_cast<std::size_t>(days));
        for (Eigen::Index t = 0; t < days; ++t) {
            v[static_cast<std::size_t>(t)] = p.day_vol(t, a);
            w[static_cast<std::size_t>(t)] = p.volume(t, a);
        }
        const auto mv = moving_average(v, static_cast<std::size_t>(config.ma_window));
        const auto mw = moving_average(w, static_cast<std::size_t>(config.ma_window));
        for (Eigen::Index t = 0; t < days; ++t) {
            vol_ma(t, a) = mv[static_cast<std::size_t>(t)];
            volume_ma(t, a) = mw[static_cast<std::size_t>(t)];
        }
    }

    // Forecast for the decision at day t: noisy next-day returns, trailing
    // covariance and moving averages available at t. Noise is seeded per
    // (run seed, target date, asset); its scale is the asset's own rolling
    // return volatility (the trailing covariance diagonal).
    p.forecast.resize(static_cast<std::size_t>(days));
    for (Eigen::Index t = config.burn_in; t + 1 < days; ++t) {
        const Eigen::MatrixXd window =
            p.returns.block(t - config.cov_window + 1, 0, config.cov_window, n);
        Eigen::MatrixXd sigma =
            forecast_covariance(window, static_cast<std::size_t>(config.cov_window),
                                config.cov_shrinkage);
        Eigen::VectorXd mu(n + 1);
        for (Eigen::Index a = 0; a < n; ++a) {
            Rng noise(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(t + 1)),
                                  static_cast<std::uint64_t>(a)));
            const double rolling_vol = std::sqrt(std::max(sigma(a, a), 0.0));
            mu[a] = p.returns(t + 1, a) + noise.normal() * config.noise_scale * rolling_vol;
        }
        mu[n] = config.cash_return;
        port::PeriodForecast f;
        f.mu = std::move(mu);
        f.sigma = std::move(sigma);
        f.day_vol = vol_ma.row(t).transpose();
        f.volume = volume_ma.row(t).transpose();
        p.forecast[static_cast<std::size_t>(t)] = std::move(f);
    }
    p.data = std::move(data);
}

Backtester::~Backtester() = default;
Backtester::Backtester(Backtester&&) noexcept = default;
Backtester& Backtester::operator=(Backtester&&) noexcept = default;

const MarketData& Backtester::data() const { return panel_->data; }
const BacktestConfig& Backtester::config() const { return panel_->config; }

BacktestResult Backtester::evaluate(const port::TradeOffParams& params) const {
    const Panel& p = *panel_;
    params.validate();
    const auto days = static_cast<Eigen::Index>(p.data.days());
    const auto n = static_cast<Eigen::Index>(p.data.n_assets());
    const int H = p.config.horizon;

    BacktestResult result;
    result.evaluation_seed = p.seed;
    result.daily_returns.reserve(static_cast<std::size_t>(days - p.config.burn_in - 1));
    result.turnover.reserve(result.daily_returns.capacity());
    result.value_series.reserve(result.daily_returns.capacity() + 1);

    port::PortfolioState state = port::PortfolioState::all_cash(static_cast<std::size_t>(n));
    double value_rel = 1.0;
    result.value_series.push_back(value_rel * p.config.initial_value);
    std::vector<Eigen::VectorXd> warm;

    for (Eigen::Index t = p.config.burn_in; t + 1 < days; ++t) {
        const auto& day_forecast = p.forecast[static_cast<std::size_t>(t)];
        std::vector<port::PeriodForecast> horizon_forecasts(static_cast<std::size_t>(H),
                                                            day_forecast);
        state.portfolio_value = value_rel;
        std::vector<port::PortfolioState> plan;
        try {
            plan = port::solve_mpo(horizon_forecasts, params, p.costs, p.cons, state, {},
                                   warm.empty() ? nullptr : &warm);
        } catch (const port::SolverError& e) {
            throw BacktestError(std::string("backtest: solver failed at day index ") +
                                    std::to_string(t) + ": " + e.what(),
                                static_cast<int>(t));
        }
        const Eigen::VectorXd& w_new = plan.front().weights;
        const Eigen::VectorXd trade = w_new - state.weights;

        const double tc = port::phi_trade(trade, p.day_vol.row(t).transpose(),
                                          p.volume.row(t).transpose(), value_rel, p.costs);
        const double hc = port::phi_hold(w_new, p.costs);

        double gross = w_new[n] * p.config.cash_return;
        double turnover = 0.0;
        for (Eigen::Index a = 0; a < n; ++a) {
            gross += w_new[a] * p.returns(t + 1, a);
            turnover += std::abs(trade[a]);
        }
        const double net = gross - tc - hc;
        if (1.0 + gross <= 0.0)
            throw BacktestError("backtest: portfolio wiped out at day index " + std::to_string(t),
                                static_cast<int>(t));

        result.daily_returns.push_back(net);
        result.turnover.push_back(turnover);
        value_rel *= 1.0 + net;
        result.value_series.push_back(value_rel * p.config.initial_value);

        // Drift weights with realized returns; costs scale value, not weights.
        Eigen::VectorXd drifted(n + 1);
        for (Eigen::Index a = 0; a < n; ++a)
            drifted[a] = w_new[a] * (1.0 + p.returns(t + 1, a)) / (1.0 + gross);
        drifted[n] = w_new[n] * (1.0 + p.config.cash_return) / (1.0 + gross);
        state.weights = std::move(drifted);

        warm.clear();
        for (const auto& ps : plan) warm.push_back(ps.weights.head(n));
    }
    result.objectives =
        annualize_objectives(result.daily_returns, p.config.annualization_days);
    return result;
}

moo::ObjectivePoint Backtester::evaluate_candidate(const evo::Candidate& candidate,
                                                   const DecodeBoxes& boxes) const {
    return evaluate(decode_hyperparams(candidate, boxes)).objectives;
}

BacktestResult run_backtest(const MarketData& data, const port::TradeOffParams& params,
                            const BacktestConfig& config, const port::CostParams& costs,
                            const port::ConstraintSet& cons, std::uint64_t seed) {
    return Backtester(data, config, costs, cons, seed).evaluate(params);
}

}  // namespace pardensur::bt
