#include "pardensur/bt/forecast.hpp"

#include <cmath>
#include <stdexcept>

namespace pardensur::bt {

double estimate_volatility(double open, double close) {
    if (!(open > 0.0) || !(close > 0.0))
        throw std::invalid_argument("estimate_volatility: prices must be positive");
    return std::abs(std::log(close) - std::log(open));
}

std::vector<double> moving_average(std::span<const double> series, std::size_t window) {
    if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
    if (series.empty()) throw std::invalid_argument("moving_average: empty series");
    std::vector<double> out(series.size());
    double running = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        running += series[i];
        if (i >= window) running -= series[i - window];
        const std::size_t count = std::min(i + 1, window);
        out[i] = running / static_cast<double>(count);
    }
    return out;
}

std::vector<double> forecast_returns(std::span<const double> realized,
                                     std::span<const double> rolling_vol, double noise_scale,
                                     Rng& rng) {
    if (realized.size() != rolling_vol.size())
        throw std::invalid_argument("forecast_returns: length mismatch");
    std::vector<double> out(realized.size());
    for (std::size_t i = 0; i < realized.size(); ++i)
        out[i] = realized[i] + rng.normal() * noise_scale * rolling_vol[i];
    return out;
}

Eigen::MatrixXd forecast_covariance(const Eigen::MatrixXd& returns, std::size_t window,
                                    double shrinkage) {
    const auto rows = static_cast<std::size_t>(returns.rows());
    const Eigen::Index n = returns.cols();
    if (rows < window || window < 2)
        throw std::invalid_argument("forecast_covariance: insufficient history");
    const auto w = static_cast<Eigen::Index>(window);
    const Eigen::MatrixXd tail = returns.bottomRows(w);
    const Eigen::RowVectorXd mean = tail.colwise().mean();
    const Eigen::MatrixXd centered = tail.rowwise() - mean;
    Eigen::MatrixXd cov = (centered.transpose() * centered) / static_cast<double>(w - 1);
    cov = (1.0 - shrinkage) * cov + shrinkage * cov.diagonal().asDiagonal().toDenseMatrix();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n + 1, n + 1);
    out.topLeftCorner(n, n) = 0.5 * (cov + cov.transpose());
    return out;
}

}  // namespace pardensur::bt
