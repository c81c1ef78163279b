#include "pardensur/search/termination.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pardensur/moo/indicators.hpp"

namespace pardensur::search {

bool moo_space_termination(std::span<const moo::FrontierSet> front_history, double tolerance,
                           std::size_t window) {
    if (tolerance <= 0.0) throw std::invalid_argument("moo_space_termination: tolerance <= 0");
    if (window < 2) throw std::invalid_argument("moo_space_termination: window must be >= 2");
    if (front_history.size() < 2) return false;

    const std::size_t count = std::min(window, front_history.size());
    const auto tail = front_history.subspan(front_history.size() - count, count);

    // Min-max normalization over the union of the window's fronts.
    double lo[2] = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    double hi[2] = {-std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
    for (const auto& front : tail) {
        for (const auto& p : front) {
            const auto f = p.min_form();
            for (int k = 0; k < 2; ++k) {
                lo[k] = std::min(lo[k], f[k]);
                hi[k] = std::max(hi[k], f[k]);
            }
        }
    }
    auto normalize = [&](const moo::FrontierSet& front) {
        moo::FrontierSet out;
        out.reserve(front.size());
        for (const auto& p : front) {
            const auto f = p.min_form();
            double z[2];
            for (int k = 0; k < 2; ++k) {
                const double range = hi[k] - lo[k];
                z[k] = range > 0.0 ? (f[k] - lo[k]) / range : 0.0;
            }
            out.push_back({z[0], -z[1]});  // back to (risk, return) convention
        }
        return out;
    };

    for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
        if (tail[i].empty() || tail[i + 1].empty()) return false;
        const auto a = normalize(tail[i]);
        const auto b = normalize(tail[i + 1]);
        const double movement = std::max(moo::igd_plus(b, a), moo::igd_plus(a, b));
        if (movement >= tolerance) return false;
    }
    return true;
}

}  // namespace pardensur::search
