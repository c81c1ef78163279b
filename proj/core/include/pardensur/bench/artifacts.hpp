#pragma once

#include <string>

#include "pardensur/bench/experiment.hpp"

namespace pardensur::bench {

std::string version_string();

// Frontier files: header "Risk,Return", one non-dominated point per row,
// 6 decimal places, sorted by risk.
void write_frontier_csv(const std::string& path, const moo::FrontierSet& frontier);
moo::FrontierSet read_frontier_csv(const std::string& path);

// Rounds through the 6-decimal file representation so in-memory indicator
// inputs match the written artifacts exactly.
moo::FrontierSet round_frontier(const moo::FrontierSet& frontier);

// History files: "generation,evaluations,hypervolume".
void write_history_csv(const std::string& path, const moo::RunHistory& history);

// Indicators table: one row per (method, seed).
void write_indicators_csv(const std::string& path, const std::vector<RunRecord>& runs);
std::vector<RunRecord> read_indicators_csv(const std::string& path);

void write_summary_json(const std::string& path, const ExperimentSpec& spec,
                        const ExperimentResult& result);

void write_stats_csv(const std::string& path, const StatsReport& report);

}  // namespace pardensur::bench
