#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace pardensur::moo {

// A backtest outcome: annualized risk (std of daily returns, percent) and
// annualized return (percent). Dominance always works on the canonical
// minimization pair (risk, -return).
struct ObjectivePoint {
    double risk_pct = 0.0;
    double return_pct = 0.0;

    // Canonical minimization form.
    std::array<double, 2> min_form() const { return {risk_pct, -return_pct}; }

    bool finite() const { return std::isfinite(risk_pct) && std::isfinite(return_pct); }

    bool operator==(const ObjectivePoint&) const = default;
};

using FrontierSet = std::vector<ObjectivePoint>;

inline void require_finite(const ObjectivePoint& p, const char* what) {
    if (!p.finite()) throw std::invalid_argument(std::string(what) + ": non-finite objective point");
}

// Weak dominance with at least one strict inequality, in minimization form.
inline bool dominates(const ObjectivePoint& a, const ObjectivePoint& b) {
    require_finite(a, "dominates");
    require_finite(b, "dominates");
    const auto fa = a.min_form(), fb = b.min_form();
    bool all_le = fa[0] <= fb[0] && fa[1] <= fb[1];
    bool any_lt = fa[0] < fb[0] || fa[1] < fb[1];
    return all_le && any_lt;
}

}  // namespace pardensur::moo
