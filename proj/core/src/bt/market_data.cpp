#include "pardensur/bt/market_data.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pardensur/common/rng.hpp"

namespace pardensur::bt {

void MarketData::validate() const {
    const std::size_t t = dates.size();
    const std::size_t n = assets.size();
    if (t == 0 || n == 0) throw std::invalid_argument("MarketData: empty");
    for (std::size_t i = 1; i < t; ++i)
        if (!(dates[i - 1] < dates[i]))
            throw std::invalid_argument("MarketData: dates must be strictly increasing");
    if (open.size() != n || close.size() != n || volume.size() != n)
        throw std::invalid_argument("MarketData: per-asset series count mismatch");
    for (std::size_t a = 0; a < n; ++a) {
        if (open[a].size() != t || close[a].size() != t || volume[a].size() != t)
            throw std::invalid_argument("MarketData: series length mismatch for " + assets[a]);
        for (std::size_t i = 0; i < t; ++i) {
            if (!(open[a][i] > 0.0) || !(close[a][i] > 0.0))
                throw std::invalid_argument("MarketData: non-positive price for " + assets[a]);
            if (!(volume[a][i] >= 0.0) || !std::isfinite(volume[a][i]))
                throw std::invalid_argument("MarketData: bad volume for " + assets[a]);
        }
    }
}

namespace {

std::vector<std::string> weekday_calendar(std::size_t n_days) {
    using namespace std::chrono;
    std::vector<std::string> out;
    out.reserve(n_days);
    sys_days day = sys_days(year{2012} / January / 2);
    while (out.size() < n_days) {
        const weekday wd{day};
        if (wd != Saturday && wd != Sunday) {
            const year_month_day ymd{day};
            char buf[16];
            std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                          static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
            out.emplace_back(buf);
        }
        day += days{1};
    }
    return out;
}

}  // namespace

MarketData gen_synthetic(std::size_t n_assets, std::size_t n_days, std::uint64_t seed,
                         const SyntheticSpec& spec) {
    if (n_assets < 1 || n_days < 2)
        throw std::invalid_argument("gen_synthetic: need n_assets >= 1 and n_days >= 2");
    const double dt = 1.0 / 250.0;
    Rng rng(derive_seed(seed, 0x6d6b74));  // market stream

    MarketData md;
    md.dates = weekday_calendar(n_days);
    md.assets.resize(n_assets);
    md.open.assign(n_assets, std::vector<double>(n_days));
    md.close.assign(n_assets, std::vector<double>(n_days));
    md.volume.assign(n_assets, std::vector<double>(n_days));

    std::vector<double> drift(n_assets), vol(n_assets);
    for (std::size_t a = 0; a < n_assets; ++a) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "A%03zu", a);
        md.assets[a] = buf;
        drift[a] = rng.uniform(spec.drift_lo, spec.drift_hi);
        vol[a] = rng.uniform(spec.vol_lo, spec.vol_hi);
        md.open[a][0] = spec.base_price;
        md.close[a][0] = spec.base_price;
        md.volume[a][0] =
            spec.volume_level * std::exp(spec.volume_sigma * rng.normal() -
                                         0.5 * spec.volume_sigma * spec.volume_sigma);
    }
    const double rho = spec.correlation;
    if (rho < 0.0 || rho >= 1.0)
        throw std::invalid_argument("gen_synthetic: correlation must be in [0, 1)");
    for (std::size_t t = 1; t < n_days; ++t) {
        const double common = rng.normal();
        for (std::size_t a = 0; a < n_assets; ++a) {
            const double idio = rng.normal();
            const double z = std::sqrt(rho) * common + std::sqrt(1.0 - rho) * idio;
            const double log_ret = (drift[a] - 0.5 * vol[a] * vol[a]) * dt +
                                   vol[a] * std::sqrt(dt) * z;
            const double gap = spec.intraday_factor * vol[a] * std::sqrt(dt) * rng.normal();
            md.open[a][t] = md.close[a][t - 1] * std::exp(gap);
            md.close[a][t] = md.close[a][t - 1] * std::exp(log_ret);
            md.volume[a][t] =
                spec.volume_level * std::exp(spec.volume_sigma * rng.normal() -
                                             0.5 * spec.volume_sigma * spec.volume_sigma);
        }
    }
    md.validate();
    return md;
}

namespace {

double parse_number(const std::string& field, std::size_t line_no, const char* column) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
        std::ostringstream msg;
        msg << "load_csv: line " << line_no << ": cannot parse " << column << " value '" << field
            << "'";
        throw std::runtime_error(msg.str());
    }
    return value;
}

struct Row {
    double open, close, volume;
};

}  // namespace

MarketData load_csv(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,asset,open,close,volume")
        throw std::runtime_error("load_csv: unexpected header '" + line + "'");

    std::set<std::string> calendar;
    std::vector<std::string> asset_order;
    std::map<std::string, std::map<std::string, Row>> table;  // asset -> date -> row
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 5> fields;
        std::size_t start = 0, field = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= 5) {
                    std::ostringstream msg;
                    msg << "load_csv: line " << line_no << ": too many columns";
                    throw std::runtime_error(msg.str());
                }
                fields[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != 5) {
            std::ostringstream msg;
            msg << "load_csv: line " << line_no << ": expected 5 columns, got " << field;
            throw std::runtime_error(msg.str());
        }
        const std::string& date = fields[0];
        const std::string& asset = fields[1];
        Row row{parse_number(fields[2], line_no, "open"), parse_number(fields[3], line_no, "close"),
                parse_number(fields[4], line_no, "volume")};
        if (!(row.open > 0.0) || !(row.close > 0.0)) {
            std::ostringstream msg;
            msg << "load_csv: line " << line_no << ": non-positive price for " << asset;
            throw std::runtime_error(msg.str());
        }
        if (row.volume < 0.0) {
            std::ostringstream msg;
            msg << "load_csv: line " << line_no << ": negative volume for " << asset;
            throw std::runtime_error(msg.str());
        }
        calendar.insert(date);
        auto [it, inserted] = table.try_emplace(asset);
        if (inserted) asset_order.push_back(asset);
        if (!it->second.emplace(date, row).second) {
            std::ostringstream msg;
            msg << "load_csv: line " << line_no << ": duplicate row for (" << date << ", " << asset
                << ")";
            throw std::runtime_error(msg.str());
        }
    }
    if (calendar.empty()) throw std::runtime_error("load_csv: no data rows in " + path);

    MarketData md;
    md.dates.assign(calendar.begin(), calendar.end());
    for (const auto& asset : asset_order) {
        const auto& rows = table[asset];
        if (rows.size() != md.dates.size()) {
            if (warnings)
                warnings->push_back("asset " + asset + " dropped: covers " +
                                    std::to_string(rows.size()) + " of " +
                                    std::to_string(md.dates.size()) + " dates");
            continue;
        }
        md.assets.push_back(asset);
        auto& o = md.open.emplace_back();
        auto& c = md.close.emplace_back();
        auto& v = md.volume.emplace_back();
        for (const auto& date : md.dates) {
            const Row& row = rows.at(date);
            o.push_back(row.open);
            c.push_back(row.close);
            v.push_back(row.volume);
        }
    }
    if (md.assets.empty())
        throw std::runtime_error("load_csv: no asset covers the full date calendar");
    md.validate();
    return md;
}

void save_csv(const MarketData& data, const std::string& path) {
    data.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    out << "date,asset,open,close,volume\n";
    char buf[96];
    for (std::size_t t = 0; t < data.days(); ++t) {
        for (std::size_t a = 0; a < data.n_assets(); ++a) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", data.open[a][t], data.close[a][t],
                          data.volume[a][t]);
            out << data.dates[t] << ',' << data.assets[a] << ',' << buf << '\n';
        }
    }
    if (!out) throw std::runtime_error("save_csv: write failed for " + path);
}

}  // namespace pardensur::bt
