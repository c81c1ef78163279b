#include "pardensur/bench/artifacts.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pardensur::bench {

#ifndef PARDENSUR_VERSION
#define PARDENSUR_VERSION "0.0.0"
#endif

std::string version_string() { return std::string("pardensur-") + PARDENSUR_VERSION; }

namespace {

double round6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return std::strtod(buf, nullptr);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

moo::FrontierSet round_frontier(const moo::FrontierSet& frontier) {
    moo::FrontierSet out;
    out.reserve(frontier.size());
    for (const auto& p : frontier) out.push_back({round6(p.risk_pct), round6(p.return_pct)});
    std::sort(out.begin(), out.end(), [](const moo::ObjectivePoint& a, const moo::ObjectivePoint& b) {
        return a.risk_pct != b.risk_pct ? a.risk_pct < b.risk_pct : a.return_pct < b.return_pct;
    });
    return out;
}

void write_frontier_csv(const std::string& path, const moo::FrontierSet& frontier) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_frontier_csv: cannot open " + path);
    out << "Risk,Return\n";
    auto sorted = round_frontier(frontier);
    char buf[80];
    for (const auto& p : sorted) {
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", p.risk_pct, p.return_pct);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write_frontier_csv: write failed for " + path);
}

moo::FrontierSet read_frontier_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_frontier_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || (line != "Risk,Return" && line != "Risk,Return\r"))
        throw std::runtime_error("read_frontier_csv: bad header in " + path);
    moo::FrontierSet out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw std::runtime_error("read_frontier_csv: bad row in " + path);
        out.push_back({std::strtod(fields[0].c_str(), nullptr),
                       std::strtod(fields[1].c_str(), nullptr)});
    }
    return out;
}

void write_history_csv(const std::string& path, const moo::RunHistory& history) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_history_csv: cannot open " + path);
    out << "generation,evaluations,hypervolume\n";
    char buf[96];
    for (const auto& rec : history.records) {
        std::snprintf(buf, sizeof buf, "%d,%ld,%.6f", rec.generation, rec.evaluations,
                      rec.hypervolume);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write_history_csv: write failed for " + path);
}

void write_indicators_csv(const std::string& path, const std::vector<RunRecord>& runs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_indicators_csv: cannot open " + path);
    out << "method,seed,failed,gd_plus,igd_plus,hv,evals_to_success,gens_to_success\n";
    char buf[160];
    for (const auto& r : runs) {
        std::snprintf(buf, sizeof buf, "%s,%llu,%d,%.6f,%.6f,%.6f", to_string(r.method).c_str(),
                      static_cast<unsigned long long>(r.seed), r.failed ? 1 : 0, r.gd_plus,
                      r.igd_plus, r.hv);
        out << buf << ',';
        if (r.evals_to_success) out << *r.evals_to_success;
        out << ',';
        if (r.gens_to_success) out << *r.gens_to_success;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_indicators_csv: write failed for " + path);
}

std::vector<RunRecord> read_indicators_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_indicators_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("read_indicators_csv: empty file " + path);
    std::vector<RunRecord> out;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8)
            throw std::runtime_error("read_indicators_csv: bad row in " + path);
        RunRecord r;
        r.method = method_from_string(f[0]);
        r.seed = std::strtoull(f[1].c_str(), nullptr, 10);
        r.failed = f[2] == "1";
        r.gd_plus = std::strtod(f[3].c_str(), nullptr);
        r.igd_plus = std::strtod(f[4].c_str(), nullptr);
        r.hv = std::strtod(f[5].c_str(), nullptr);
        if (!f[6].empty()) r.evals_to_success = std::strtol(f[6].c_str(), nullptr, 10);
        if (!f[7].empty()) r.gens_to_success = static_cast<int>(std::strtol(f[7].c_str(), nullptr, 10));
        out.push_back(std::move(r));
    }
    return out;
}

void write_stats_csv(const std::string& path, const StatsReport& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_stats_csv: cannot open " + path);
    out << "indicator,method_a,method_b,direction,p_raw,p_adjusted\n";
    char buf[64];
    for (const auto& e : report.entries) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g", e.p_raw, e.p_adjusted);
        out << e.indicator << ',' << to_string(e.a) << ',' << to_string(e.b) << ','
            << e.direction << ',' << buf << '\n';
    }
    if (!out) throw std::runtime_error("write_stats_csv: write failed for " + path);
}

void write_summary_json(const std::string& path, const ExperimentSpec& spec,
                        const ExperimentResult& result) {
    using json = nlohmann::ordered_json;
    json j;
    j["version"] = version_string();

    json cfg;
    json methods = json::array();
    for (Method m : spec.methods) methods.push_back(to_string(m));
    cfg["methods"] = methods;
    cfg["repeats"] = spec.repeats;
    cfg["base_seed"] = spec.base_seed;
    cfg["evaluation_seed"] = spec.evaluation_seed;
    cfg["search"] = {{"budget", spec.search.budget},
                     {"population", spec.search.population},
                     {"offspring", spec.search.offspring},
                     {"look_ahead_tolerance", spec.search.look_ahead_tolerance},
                     {"look_ahead_max_generations", spec.search.look_ahead_max_generations},
                     {"acceptance_draw_cap_factor", spec.search.acceptance_draw_cap_factor},
                     {"k_folds", spec.search.k_folds},
                     {"surrogate_trees", spec.search.surrogate_fit.trees},
                     {"hv_ref_risk", spec.search.hv_ref.risk_pct},
                     {"hv_ref_return", spec.search.hv_ref.return_pct}};
    cfg["backtest"] = {{"horizon", spec.backtest.horizon},
                       {"burn_in", spec.backtest.burn_in},
                       {"noise_scale", spec.backtest.noise_scale},
                       {"cov_window", spec.backtest.cov_window},
                       {"ma_window", spec.backtest.ma_window},
                       {"annualization_days", spec.backtest.annualization_days},
                       {"initial_value", spec.backtest.initial_value},
                       {"cash_return", spec.backtest.cash_return}};
    cfg["costs"] = {{"half_spread", spec.costs.half_spread},
                    {"impact_coeff", spec.costs.impact_coeff},
                    {"borrow_cost", spec.costs.borrow_cost}};
    cfg["constraints"] = {{"long_only", spec.constraints.long_only}};
    if (spec.constraints.max_weight) cfg["constraints"]["max_weight"] = *spec.constraints.max_weight;
    if (spec.constraints.max_cash) cfg["constraints"]["max_cash"] = *spec.constraints.max_cash;
    cfg["variation"] = {{"crossover_rate", spec.variation.crossover_rate},
                        {"mutation_rate", spec.variation.mutation_rate},
                        {"eta", spec.variation.eta}};
    cfg["decode_boxes"] = {{"risk", {spec.boxes.risk_lo, spec.boxes.risk_hi}},
                           {"trade", {spec.boxes.trade_lo, spec.boxes.trade_hi}},
                           {"hold", {spec.boxes.hold_lo, spec.boxes.hold_hi}}};
    cfg["data"] = spec.csv_path.empty()
                      ? json{{"synthetic",
                              {{"assets", spec.synthetic.assets},
                               {"days", spec.synthetic.days},
                               {"seed", spec.synthetic.seed}}}}
                      : json{{"csv", spec.csv_path}};
    cfg["reference_evaluations"] = spec.reference_evaluations;
    cfg["sr_threshold"] = spec.sr_threshold;
    j["config"] = cfg;

    json seeds = json::array();
    for (int i = 0; i < spec.repeats; ++i) seeds.push_back(spec.base_seed + static_cast<std::uint64_t>(i));
    j["seeds"] = seeds;

    j["reference"] = {{"evaluations", spec.reference_evaluations},
                      {"frontier_size", result.reference_frontier.size()},
                      {"hv", result.reference_hv}};

    json per_method;
    for (Method m : spec.methods) {
        json runs = json::array();
        std::vector<moo::RunHistory> histories;
        double best_hv = 0.0;
        bool incomplete = false;
        for (const auto& r : result.runs) {
            if (r.method != m) continue;
            json jr = {{"seed", r.seed},      {"failed", r.failed},   {"gd_plus", r.gd_plus},
                       {"igd_plus", r.igd_plus}, {"hv", r.hv}};
            if (r.evals_to_success) jr["evals_to_success"] = *r.evals_to_success;
            if (r.gens_to_success) jr["gens_to_success"] = *r.gens_to_success;
            if (r.failed) {
                jr["error"] = r.error;
                incomplete = true;
            } else {
                histories.push_back(r.history);
            }
            best_hv = std::max(best_hv, r.hv);
            runs.push_back(std::move(jr));
        }
        json agg;
        agg["best_hv"] = best_hv;
        agg["incomplete"] = incomplete;
        if (!histories.empty()) {
            const auto q = moo::quality_indicators(histories, result.reference_hv,
                                                   spec.sr_threshold);
            agg["sr"] = q.success_rate_pct;
            if (q.mean_evaluations) agg["aesr"] = *q.mean_evaluations;
            if (q.mean_generations) agg["agsr"] = *q.mean_generations;
        }
        per_method[to_string(m)] = {{"runs", runs}, {"aggregates", agg}};
    }
    j["methods"] = per_method;

    json stats = json::array();
    for (const auto& e : result.stats.entries)
        stats.push_back({{"indicator", e.indicator},
                         {"a", to_string(e.a)},
                         {"b", to_string(e.b)},
                         {"direction", e.direction},
                         {"p_raw", e.p_raw},
                         {"p_adjusted", e.p_adjusted}});
    j["stats"] = stats;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_summary_json: cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write_summary_json: write failed for " + path);
}

}  // namespace pardensur::bench
