#pragma once

#include <map>
#include <string>
#include <vector>

#include "secopt/bench.hpp"

namespace secopt {

// Flat TOML-style config value: number, bool, string, or a homogeneous array.
struct ConfigValue {
    enum class Kind { Number, Bool, String, NumberArray, StringArray };
    Kind kind = Kind::Number;
    double num = 0.0;
    bool flag = false;
    std::string str;
    std::vector<double> nums;
    std::vector<std::string> strs;
};

// Keys are "section.key". Unknown keys are hard errors at typed load time.
using ConfigMap = std::map<std::string, ConfigValue>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);  // IoError if unreadable

struct RunConfig {
    ScenarioConfig scenario;
    AoOptions ao;
    std::vector<Scheme> schemes;
    int n_realizations = 100;
    int workers = 0;  // 0 = auto

    // Raw key/value view for the manifest snapshot.
    ConfigMap snapshot;
};

// Defaults are the reference scenario: 4 antennas everywhere, M = 20,
// -40 dBm noise, 30 dBm power, Rician 1 on the reflected receive links.
RunConfig default_run_config();

// Typed load with strict key checking; dB/dBm fields are converted to linear
// watts here, once.
RunConfig load_run_config(const ConfigMap& map);
RunConfig load_run_config_file(const std::string& path);

// Re-serializes the effective config (flat, TOML-style) for snapshots.
ConfigMap config_to_map(const RunConfig& cfg);

} // namespace secopt
