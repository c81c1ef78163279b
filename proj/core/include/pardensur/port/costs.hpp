#pragma once

#include "pardensur/port/types.hpp"

namespace pardensur::port {

inline constexpr double kVolumeFloorFraction = 1e-6;

// Trading cost fraction of a trade u (n+1, cash last, cash entry free):
// sum_i half_spread*|u_i| + b*day_vol_i*|u_i|^{3/2}*sqrt(value/volume_i).
// Zero volumes are floored at kVolumeFloorFraction * portfolio_value.
double phi_trade(const Eigen::VectorXd& u, const Eigen::VectorXd& day_vol,
                 const Eigen::VectorXd& volume, double portfolio_value, const CostParams& costs);

// Holding cost fraction: borrow_cost * sum over risky assets of max(-w_i, 0).
double phi_hold(const Eigen::VectorXd& w, const CostParams& costs);

}  // namespace pardensur::port
