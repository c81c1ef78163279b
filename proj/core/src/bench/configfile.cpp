#include "pardensur/bench/configfile.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pardensur::bench {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                          (s.front() == '\'' && s.back() == '\'')))
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_list(const std::string& body, std::size_t line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    char quote_char = 0;
    for (char ch : body) {
        if (quoted) {
            if (ch == quote_char) quoted = false;
            cur.push_back(ch);
        } else if (ch == '"' || ch == '\'') {
            quoted = true;
            quote_char = ch;
            cur.push_back(ch);
        } else if (ch == ',') {
            out.push_back(unquote(trim(cur)));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (quoted) throw std::runtime_error("config: unterminated quote on line " +
                                         std::to_string(line_no));
    const std::string last = trim(cur);
    if (!last.empty()) out.push_back(unquote(last));
    return out;
}

}  // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw std::runtime_error("config: bad section on line " + std::to_string(line_no));
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected key = value on line " +
                                     std::to_string(line_no));
        const std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::runtime_error("config: empty key or value on line " +
                                     std::to_string(line_no));
        if (value.front() == '[') {
            if (value.back() != ']')
                throw std::runtime_error("config: bad list on line " + std::to_string(line_no));
            cfg.values_[section][key] = split_list(value.substr(1, value.size() - 2), line_no);
            cfg.is_list_[section][key] = true;
        } else {
            cfg.values_[section][key] = {unquote(value)};
            cfg.is_list_[section][key] = false;
        }
    }
    return cfg;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto s = values_.find(section);
    return s != values_.end() && s->second.contains(key);
}

std::optional<std::string> ConfigFile::get_string(const std::string& section,
                                                  const std::string& key) const {
    auto s = values_.find(section);
    if (s == values_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end() || k->second.empty()) return std::nullopt;
    return k->second.front();
}

std::optional<double> ConfigFile::get_number(const std::string& section,
                                             const std::string& key) const {
    auto v = get_string(section, key);
    if (!v) return std::nullopt;
    char* end = nullptr;
    const double d = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0')
        throw std::runtime_error("config: " + section + "." + key + " is not a number");
    return d;
}

std::optional<bool> ConfigFile::get_bool(const std::string& section, const std::string& key) const {
    auto v = get_string(section, key);
    if (!v) return std::nullopt;
    if (*v == "true" || *v == "on" || *v == "1") return true;
    if (*v == "false" || *v == "off" || *v == "0") return false;
    throw std::runtime_error("config: " + section + "." + key + " is not a boolean");
}

std::optional<std::vector<std::string>> ConfigFile::get_list(const std::string& section,
                                                             const std::string& key) const {
    auto s = values_.find(section);
    if (s == values_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

void apply_config(const ConfigFile& c, ExperimentSpec& spec) {
    if (auto v = c.get_list("experiment", "methods")) {
        spec.methods.clear();
        for (const auto& name : *v) spec.methods.push_back(method_from_string(name));
    }
    if (auto v = c.get_number("experiment", "repeats")) spec.repeats = static_cast<int>(*v);
    if (auto v = c.get_number("experiment", "base_seed"))
        spec.base_seed = static_cast<std::uint64_t>(*v);
    if (auto v = c.get_number("experiment", "evaluation_seed"))
        spec.evaluation_seed = static_cast<std::uint64_t>(*v);
    if (auto v = c.get_number("experiment", "reference_evaluations"))
        spec.reference_evaluations = static_cast<long>(*v);
    if (auto v = c.get_number("experiment", "sr_threshold")) spec.sr_threshold = *v;
    if (auto v = c.get_string("experiment", "out_dir")) spec.out_dir = *v;
    if (auto v = c.get_number("experiment", "eval_workers"))
        spec.eval_workers = static_cast<unsigned>(*v);

    if (auto v = c.get_number("search", "budget")) spec.search.budget = static_cast<long>(*v);
    if (auto v = c.get_number("search", "population"))
        spec.search.population = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("search", "offspring"))
        spec.search.offspring = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("search", "look_ahead_tolerance"))
        spec.search.look_ahead_tolerance = *v;
    if (auto v = c.get_number("search", "look_ahead_max_generations"))
        spec.search.look_ahead_max_generations = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("search", "acceptance_draw_cap_factor"))
        spec.search.acceptance_draw_cap_factor = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("search", "k_folds"))
        spec.search.k_folds = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("search", "surrogate_trees"))
        spec.search.surrogate_fit.trees = static_cast<std::size_t>(*v);

    if (auto v = c.get_number("backtest", "horizon")) spec.backtest.horizon = static_cast<int>(*v);
    if (auto v = c.get_number("backtest", "burn_in")) spec.backtest.burn_in = static_cast<int>(*v);
    if (auto v = c.get_number("backtest", "noise_scale")) spec.backtest.noise_scale = *v;
    if (auto v = c.get_number("backtest", "cov_window"))
        spec.backtest.cov_window = static_cast<int>(*v);
    if (auto v = c.get_number("backtest", "ma_window"))
        spec.backtest.ma_window = static_cast<int>(*v);
    if (auto v = c.get_number("backtest", "annualization_days"))
        spec.backtest.annualization_days = static_cast<int>(*v);
    if (auto v = c.get_number("backtest", "initial_value")) spec.backtest.initial_value = *v;
    if (auto v = c.get_number("backtest", "cash_return")) spec.backtest.cash_return = *v;

    if (auto v = c.get_number("costs", "half_spread")) spec.costs.half_spread = *v;
    if (auto v = c.get_number("costs", "impact_coeff")) spec.costs.impact_coeff = *v;
    if (auto v = c.get_number("costs", "borrow_cost")) spec.costs.borrow_cost = *v;

    if (auto v = c.get_bool("constraints", "long_only")) spec.constraints.long_only = *v;
    if (auto v = c.get_number("constraints", "max_weight")) spec.constraints.max_weight = *v;
    if (auto v = c.get_number("constraints", "max_cash")) spec.constraints.max_cash = *v;

    if (auto v = c.get_number("variation", "crossover_rate")) spec.variation.crossover_rate = *v;
    if (auto v = c.get_number("variation", "mutation_rate")) spec.variation.mutation_rate = *v;
    if (auto v = c.get_number("variation", "eta")) spec.variation.eta = *v;

    if (auto v = c.get_number("boxes", "risk_lo")) spec.boxes.risk_lo = *v;
    if (auto v = c.get_number("boxes", "risk_hi")) spec.boxes.risk_hi = *v;
    if (auto v = c.get_number("boxes", "trade_lo")) spec.boxes.trade_lo = *v;
    if (auto v = c.get_number("boxes", "trade_hi")) spec.boxes.trade_hi = *v;
    if (auto v = c.get_number("boxes", "hold_lo")) spec.boxes.hold_lo = *v;
    if (auto v = c.get_number("boxes", "hold_hi")) spec.boxes.hold_hi = *v;

    if (auto v = c.get_number("rnsga2", "epsilon")) spec.rnsga2_epsilon = *v;

    if (auto v = c.get_string("data", "csv")) spec.csv_path = *v;
    if (auto v = c.get_number("data", "assets"))
        spec.synthetic.assets = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("data", "days")) spec.synthetic.days = static_cast<std::size_t>(*v);
    if (auto v = c.get_number("data", "seed"))
        spec.synthetic.seed = static_cast<std::uint64_t>(*v);
    if (auto v = c.get_number("data", "drift_lo")) spec.synthetic.market.drift_lo = *v;
    if (auto v = c.get_number("data", "drift_hi")) spec.synthetic.market.drift_hi = *v;
    if (auto v = c.get_number("data", "vol_lo")) spec.synthetic.market.vol_lo = *v;
    if (auto v = c.get_number("data", "vol_hi")) spec.synthetic.market.vol_hi = *v;
    if (auto v = c.get_number("data", "correlation")) spec.synthetic.market.correlation = *v;
}

}  // namespace pardensur::bench
