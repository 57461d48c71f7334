#include "secopt/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include <json.hpp>

namespace secopt {

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

nlohmann::json config_json(const ConfigMap& map) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, v] : map) {
        switch (v.kind) {
            case ConfigValue::Kind::Number: j[key] = v.num; break;
            case ConfigValue::Kind::Bool: j[key] = v.flag; break;
            case ConfigValue::Kind::String: j[key] = v.str; break;
            case ConfigValue::Kind::NumberArray: j[key] = v.nums; break;
            case ConfigValue::Kind::StringArray: j[key] = v.strs; break;
        }
    }
    return j;
}

} // namespace

void write_manifest_atomic(const RunManifest& manifest, const std::string& path) {
    nlohmann::json j;
    j["tool"] = "irs_secopt";
    j["version"] = manifest.tool_version;
    j["command"] = manifest.command;
    j["master_seed"] = manifest.master_seed;
    j["started_at"] = manifest.started_at;
    j["finished_at"] = manifest.finished_at;
    j["outputs"] = manifest.outputs;
    j["config"] = config_json(manifest.config);

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("manifest: cannot open " + tmp);
        out << j.dump(2) << '\n';
        if (!out.good()) throw IoError("manifest: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw IoError("manifest: rename to " + path + " failed");
    }
}

} // namespace secopt
