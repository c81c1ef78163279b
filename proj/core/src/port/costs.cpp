#include "pardensur/port/costs.hpp"

#include <cmath>

namespace pardensur::port {

double phi_trade(const Eigen::VectorXd& u, const Eigen::VectorXd& day_vol,
                 const Eigen::VectorXd& volume, double portfolio_value, const CostParams& costs) {
    const Eigen::Index n = u.size() - 1;
    if (day_vol.size() != n || volume.size() != n)
        throw std::invalid_argument("phi_trade: dimension mismatch");
    if ((volume.array() < 0.0).any()) throw std::invalid_argument("phi_trade: negative volume");
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mag = std::abs(u[i]);
        total += costs.half_spread * mag;
        if (costs.impact_coeff > 0.0 && mag > 0.0) {
            const double vol_floor = std::max(volume[i], kVolumeFloorFraction * portfolio_value);
            total += costs.impact_coeff * day_vol[i] * mag * std::sqrt(mag) *
                     std::sqrt(portfolio_value / vol_floor);
        }
    }
    return total;
}

double phi_hold(const Eigen::VectorXd& w, const CostParams& costs) {
    const Eigen::Index n = w.size() - 1;
    double shorts = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) shorts += std::max(-w[i], 0.0);
    return costs.borrow_cost * shorts;
}

}  // namespace pardensur::port
