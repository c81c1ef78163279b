#include "pardensur/stats/tests.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

namespace pardensur::stats {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Doubled U statistic (integer-valued even with ties at 1/2).
long doubled_u(std::span<const double> x, std::span<const double> y) {
    long u2 = 0;
    for (double xi : x)
        for (double yj : y) {
            if (xi > yj)
                u2 += 2;
            else if (xi == yj)
                u2 += 1;
        }
    return u2;
}

// Exact permutation distribution of 2U via dynamic programming over the
// pooled value multiset: state (assigned to x, accumulated 2U) -> count.
double exact_p(std::span<const double> x, std::span<const double> y, long u2_obs,
               Alternative alternative) {
    const std::size_t n = x.size(), m = y.size();
    std::map<double, std::size_t> counts;
    for (double v : x) ++counts[v];
    for (double v : y) ++counts[v];

    const std::size_t u_max = 2 * n * m;
    // dp[a][u] = number of labelings with a pooled-prefix elements in x and 2U = u.
    std::vector<std::vector<double>> dp(n + 1, std::vector<double>(u_max + 1, 0.0));
    dp[0][0] = 1.0;
    std::size_t processed = 0;
    for (const auto& [value, c] : counts) {
        std::vector<std::vector<double>> next(n + 1, std::vector<double>(u_max + 1, 0.0));
        // Binomial coefficients C(c, k).
        std::vector<double> choose(c + 1, 1.0);
        for (std::size_t k = 1; k <= c; ++k)
            choose[k] = choose[k - 1] * static_cast<double>(c - k + 1) / static_cast<double>(k);
        for (std::size_t a = 0; a <= std::min(n, processed); ++a) {
            for (std::size_t u = 0; u <= u_max; ++u) {
                const double ways = dp[a][u];
                if (ways == 0.0) continue;
                const std::size_t y_smaller = processed - a;
                // k of this value's copies go to x; the rest must fit in y.
                const std::size_t k_min = y_smaller + c > m ? y_smaller + c - m : 0;
                for (std::size_t k = k_min; k <= c && a + k <= n; ++k) {
                    const std::size_t du = 2 * k * y_smaller + k * (c - k);
                    next[a + k][u + du] += ways * choose[k];
                }
            }
        }
        dp = std::move(next);
        processed += c;
    }
    double total = 0.0, tail = 0.0;
    for (std::size_t u = 0; u <= u_max; ++u) {
        const double ways = dp[n][u];
        total += ways;
        const bool in_tail = alternative == Alternative::x_greater
                                 ? static_cast<long>(u) >= u2_obs
                                 : static_cast<long>(u) <= u2_obs;
        if (in_tail) tail += ways;
    }
    return tail / total;
}

double approx_p(std::span<const double> x, std::span<const double> y, long u2_obs,
                Alternative alternative) {
    const double n = static_cast<double>(x.size());
    const double m = static_cast<double>(y.size());
    const double big_n = n + m;
    std::map<double, std::size_t> counts;
    for (double v : x) ++counts[v];
    for (double v : y) ++counts[v];
    double tie_term = 0.0;
    for (const auto& [value, t] : counts) {
        const double td = static_cast<double>(t);
        tie_term += td * td * td - td;
    }
    const double u = static_cast<double>(u2_obs) / 2.0;
    const double mean = n * m / 2.0;
    const double var = n * m / 12.0 * ((big_n + 1.0) - tie_term / (big_n * (big_n - 1.0)));
    if (var <= 0.0) return 1.0;  // fully tied pool: no evidence either way
    const double sd = std::sqrt(var);
    if (alternative == Alternative::x_greater) return normal_cdf(-(u - mean - 0.5) / sd);
    return normal_cdf((u - mean + 0.5) / sd);
}

}  // namespace

double mann_whitney_one_sided(std::span<const double> x, std::span<const double> y,
                              Alternative alternative) {
    if (x.empty() || y.empty())
        throw std::invalid_argument("mann_whitney_one_sided: empty sample");
    for (double v : x)
        if (!std::isfinite(v)) throw std::invalid_argument("mann_whitney_one_sided: non-finite");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("mann_whitney_one_sided: non-finite");
    const long u2 = doubled_u(x, y);
    if (x.size() + y.size() <= 20) return exact_p(x, y, u2, alternative);
    return approx_p(x, y, u2, alternative);
}

std::vector<double> hochberg_adjust(std::span<const double> p_values) {
    const std::size_t m = p_values.size();
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("hochberg_adjust: p-values must be in [0, 1]");
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
    std::vector<double> adjusted(m, 0.0);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double scaled = static_cast<double>(m - k) * p_values[order[k]];
        running = std::min(running, std::min(scaled, 1.0));
        adjusted[order[k]] = running;
    }
    return adjusted;
}

}  // namespace pardensur::stats
