#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "pardensur/common/rng.hpp"

namespace pardensur::bt {

// |ln(close) - ln(open)|.
double estimate_volatility(double open, double close);

// Trailing mean over the last `window` observations; the first window-1
// outputs average the available prefix.
std::vector<double> moving_average(std::span<const double> series, std::size_t window);

// realized_i + eps_i with eps_i ~ N(0, (c * rolling_vol_i)^2).
std::vector<double> forecast_returns(std::span<const double> realized,
                                     std::span<const double> rolling_vol, double noise_scale,
                                     Rng& rng);

// Trailing sample covariance (ddof 1) over the last `window` rows, shrunk
// toward its own diagonal with intensity `shrinkage`; returned (n+1)x(n+1)
// with a zero cash row/column.
Eigen::MatrixXd forecast_covariance(const Eigen::MatrixXd& returns, std::size_t window,
                                    double shrinkage = 0.1);

}  // namespace pardensur::bt
