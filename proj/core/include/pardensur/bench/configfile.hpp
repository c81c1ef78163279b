#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pardensur/bench/experiment.hpp"

namespace pardensur::bench {

// Minimal TOML-style configuration: [sections] of key = value pairs with
// booleans, numbers, quoted strings, and flat arrays.
class ConfigFile {
public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> get_string(const std::string& section, const std::string& key) const;
    std::optional<double> get_number(const std::string& section, const std::string& key) const;
    std::optional<bool> get_bool(const std::string& section, const std::string& key) const;
    std::optional<std::vector<std::string>> get_list(const std::string& section,
                                                     const std::string& key) const;

private:
    // Scalars are single-token lists; list entries keep quotes stripped.
    std::map<std::string, std::map<std::string, std::vector<std::string>>> values_;
    std::map<std::string, std::map<std::string, bool>> is_list_;
};

// Applies every recognized key of the config onto the spec.
void apply_config(const ConfigFile& config, ExperimentSpec& spec);

}  // namespace pardensur::bench
