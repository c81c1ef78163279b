#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pardensur::bt {

// Aligned daily open/close prices and traded value per asset. Every asset
// covers the full calendar; loaders drop assets with gaps.
struct MarketData {
    std::vector<std::string> dates;   // ISO-8601, strictly increasing
    std::vector<std::string> assets;  // asset ids
    std::vector<std::vector<double>> open;    // [asset][day]
    std::vector<std::vector<double>> close;   // [asset][day]
    std::vector<std::vector<double>> volume;  // [asset][day], traded value

    std::size_t days() const { return dates.size(); }
    std::size_t n_assets() const { return assets.size(); }

    void validate() const;

    bool operator==(const MarketData&) const = default;
};

struct SyntheticSpec {
    double drift_lo = 0.00;   // annualized drift range
    double drift_hi = 0.25;
    double vol_lo = 0.10;     // annualized volatility range
    double vol_hi = 0.40;
    double correlation = 0.3;  // pairwise correlation of log-returns
    double base_price = 100.0;
    double intraday_factor = 0.25;  // overnight gap scale relative to daily vol
    double volume_level = 1e6;      // mean traded value
    double volume_sigma = 0.5;      // lognormal dispersion
};

// Correlated geometric Brownian closes with lognormal volumes, fully
// determined by the seed. Calendar starts 2012-01-02, weekdays only.
MarketData gen_synthetic(std::size_t n_assets, std::size_t n_days, std::uint64_t seed,
                         const SyntheticSpec& spec = {});

// CSV schema (header row): date,asset,open,close,volume. Assets missing any
// calendar date are dropped with a warning.
MarketData load_csv(const std::string& path, std::vector<std::string>* warnings = nullptr);
void save_csv(const MarketData& data, const std::string& path);

}  // namespace pardensur::bt
