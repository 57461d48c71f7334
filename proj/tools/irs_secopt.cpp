// Command-line front end: single runs, Monte-Carlo sweeps, and the
// brute-force selftest suites. Exit codes: 0 success, 1 selftest oracle
// failure, 2 configuration error, 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "secopt/bench.hpp"
#include "secopt/config.hpp"
#include "secopt/manifest.hpp"
#include "secopt/oracles.hpp"

namespace {

using namespace secopt;

int resolve_workers(int cli_value, int config_value) {
    if (cli_value > 0) return cli_value;
    if (const char* env = std::getenv("IRS_SECOPT_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0) return w;
    }
    if (config_value > 0) return config_value;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

RunConfig load_config(const std::string& path) {
    if (path.empty()) return default_run_config();
    return load_run_config_file(path);
}

RunManifest start_manifest(const RunConfig& cfg, const std::string& command) {
    RunManifest m;
    m.config = config_to_map(cfg);
    m.master_seed = cfg.scenario.master_seed;
    m.tool_version = SECOPT_VERSION;
    m.command = command;
    m.started_at = iso8601_utc_now();
    return m;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<int> q_levels, const std::string& manifest_path) {
    RunConfig cfg = load_config(config_path);
    if (seed) cfg.scenario.master_seed = *seed;
    if (q_levels) cfg.ao.q_levels = *q_levels;
    cfg.scenario.validate();
    cfg.ao.validate();

    // Seed goes on disk before the first draw.
    RunManifest manifest = start_manifest(cfg, "run");
    write_manifest_atomic(manifest, manifest_path);

    const ChannelSet chs = scenario_channels(cfg.scenario, 0);
    RngStream rng = RngStream::derive(cfg.scenario.master_seed, {rng_realm::scheme, 0});
    OptimizerReport report = cfg.ao.q_levels >= 2
                                 ? ao_discrete(chs, cfg.scenario.p_max_w, cfg.ao, rng)
                                 : ao_optimize(chs, cfg.scenario.p_max_w, cfg.ao, rng);

    std::printf("seed            : %llu\n",
                static_cast<unsigned long long>(cfg.scenario.master_seed));
    std::printf("q_levels        : %d%s\n", cfg.ao.q_levels,
                cfg.ao.q_levels >= 2 ? "" : " (continuous)");
    std::printf("rounds          : %d (%s)\n", report.rounds,
                report.converged ? "converged" : "max rounds reached");
    std::printf("objective start : %.9g bits/s/Hz\n", report.objective_trace.front());
    std::printf("objective end   : %.9g bits/s/Hz\n", report.objective_trace.back());
    std::printf("secrecy rate    : %.9g bits/s/Hz\n", report.secrecy_rate_clamped);
    std::printf("wall time       : %.3f s\n", report.wall_time_s);

    manifest.finished_at = iso8601_utc_now();
    write_manifest_atomic(manifest, manifest_path);
    return 0;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed,
              const std::string& axis_text, std::vector<double> values,
              std::optional<int> realizations, const std::vector<std::string>& scheme_args,
              const std::string& out_csv, const std::string& out_svg, int cli_workers,
              std::string manifest_path) {
    RunConfig cfg = load_config(config_path);
    if (seed) cfg.scenario.master_seed = *seed;
    if (realizations) cfg.n_realizations = *realizations;
    std::vector<Scheme> schemes = cfg.schemes;
    if (!scheme_args.empty()) {
        schemes.clear();
        for (const std::string& s : scheme_args) schemes.push_back(Scheme::parse(s));
    }
    const SweepAxis axis = parse_axis(axis_text);
    if (values.empty()) throw ConfigError("sweep: --values must not be empty");
    const int workers = resolve_workers(cli_workers, cfg.workers);

    if (manifest_path.empty()) {
        manifest_path = out_csv.empty() ? "sweep_manifest.json" : out_csv + ".manifest.json";
    }
    RunManifest manifest = start_manifest(cfg, "sweep");
    write_manifest_atomic(manifest, manifest_path);

    SweepResult result = monte_carlo_sweep(cfg.scenario, cfg.ao, schemes, axis, values,
                                           cfg.n_realizations, workers);

    std::printf("axis: %s, realizations: %d, workers: %d\n", result.axis.c_str(),
                result.n_realizations, workers);
    for (std::size_t ai = 0; ai < result.axis_values.size(); ++ai) {
        std::printf("%s = %.9g:", result.axis.c_str(), result.axis_values[ai]);
        for (std::size_t s = 0; s < result.scheme_names.size(); ++s) {
            std::printf("  %s %.9g", result.scheme_names[s].c_str(),
                        result.mean_rate[ai][s]);
        }
        std::printf("\n");
    }

    if (!out_csv.empty()) {
        emit_csv(result, out_csv);
        manifest.outputs.push_back(out_csv);
    }
    if (!out_svg.empty()) {
        emit_plot(result, out_svg);
        manifest.outputs.push_back(out_svg);
    }
    manifest.finished_at = iso8601_utc_now();
    write_manifest_atomic(manifest, manifest_path);
    return 0;
}

int cmd_selftest(const std::string& scale, std::uint64_t seed,
                 const std::string& manifest_path) {
    if (scale != "quick" && scale != "full") {
        throw ConfigError("selftest: scale must be quick or full");
    }
    RunConfig cfg = default_run_config();
    cfg.scenario.master_seed = seed;
    RunManifest manifest = start_manifest(cfg, "selftest " + scale);
    write_manifest_atomic(manifest, manifest_path);

    const auto suites = oracle::run_selftest(scale == "full", seed);
    bool all_ok = true;
    for (const auto& s : suites) {
        std::printf("%-24s passed %d/%d  (%.2f s)%s%s\n", s.name.c_str(),
                    s.cases - s.failures, s.cases, s.seconds,
                    s.passed() ? "" : "  FIRST FAILURE: ", s.detail.c_str());
        all_ok = all_ok && s.passed();
    }
    std::printf("selftest %s\n", all_ok ? "PASSED" : "FAILED");
    manifest.finished_at = iso8601_utc_now();
    write_manifest_atomic(manifest, manifest_path);
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-assisted MIMO wiretap secrecy rate optimizer"};
    app.set_version_flag("--version", SECOPT_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> q_levels;
    std::optional<int> realizations;
    std::string axis_text = "p_max";
    std::vector<double> values;
    std::vector<std::string> scheme_args;
    std::string out_csv, out_svg, manifest_path;
    int workers = 0;
    std::string scale = "quick";

    CLI::App* run = app.add_subcommand("run", "optimize one channel realization");
    run->add_option("--config", config_path, "config file (TOML-style)");
    run->add_option("--seed", seed, "master seed override");
    run->add_option("--q-levels", q_levels, "0 = continuous, >= 2 = discrete grid");
    run->add_option("--out-manifest", manifest_path, "manifest path");

    CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over an axis");
    sweep->add_option("--config", config_path, "config file (TOML-style)");
    sweep->add_option("--seed", seed, "master seed override");
    sweep->add_option("--axis", axis_text, "p_max | m_elements | n_r")->required();
    sweep->add_option("--values", values, "ascending axis values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--realizations", realizations, "Monte-Carlo realizations");
    sweep->add_option("--scheme", scheme_args,
                      "scheme (repeatable): no_irs, random_irs, ao_continuous, ao_q<k>");
    sweep->add_option("--out-csv", out_csv, "CSV output path");
    sweep->add_option("--out-svg", out_svg, "SVG output path");
    sweep->add_option("--workers", workers, "worker threads (0 = auto)");
    sweep->add_option("--out-manifest", manifest_path, "manifest path");

    CLI::App* selftest = app.add_subcommand("selftest", "run the oracle suites");
    selftest->add_option("scale", scale, "quick | full");
    std::uint64_t selftest_seed = 1;
    selftest->add_option("--seed", selftest_seed, "oracle suite seed");
    selftest->add_option("--out-manifest", manifest_path, "manifest path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) {
            if (manifest_path.empty()) manifest_path = "run_manifest.json";
            return cmd_run(config_path, seed, q_levels, manifest_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, seed, axis_text, values, realizations,
                             scheme_args, out_csv, out_svg, workers, manifest_path);
        }
        if (selftest->parsed()) {
            if (manifest_path.empty()) manifest_path = "selftest_manifest.json";
            return cmd_selftest(scale, selftest_seed, manifest_path);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
