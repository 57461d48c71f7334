#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secopt/config.hpp"

namespace secopt {

// Provenance record written next to every command's outputs. The seed is
// recorded (and the file written) before any randomness is drawn; the record
// is finalized with the end timestamp when the command completes.
struct RunManifest {
    ConfigMap config;
    std::uint64_t master_seed = 0;
    std::string tool_version;
    std::string command;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
};

std::string iso8601_utc_now();

// Serializes to JSON and renames a temp file into place.
void write_manifest_atomic(const RunManifest& manifest, const std::string& path);

} // namespace secopt
