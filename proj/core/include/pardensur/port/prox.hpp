#pragma once

#include <Eigen/Dense>

namespace pardensur::port {

// argmin_z  A|z - p| + C|z - p|^{3/2} + B*max(-z, 0) + (z - v)^2 / (2t),
// A, C, B >= 0, t > 0. Closed form piecewise: the 3/2-power piece reduces to a
// quadratic in sqrt|z - p| on each smooth region.
double prox_piecewise_cost(double v, double t, double p, double A, double C, double B);

// Euclidean projection onto {lb <= x <= ub} intersect {s_lo <= sum(x) <= s_hi},
// in place. Bounds may be +-infinity. Throws when the set is empty.
void project_box_sum(Eigen::VectorXd& x, const Eigen::VectorXd& lb, const Eigen::VectorXd& ub,
                     double s_lo, double s_hi);

}  // namespace pardensur::port
