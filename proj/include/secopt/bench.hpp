#pragma once

#include <string>
#include <vector>

#include "secopt/alternating.hpp"

namespace secopt {

struct Scheme {
    enum class Kind { NoIrs, RandomIrs, AoContinuous, AoDiscrete };
    Kind kind = Kind::AoContinuous;
    int q_levels = 0;  // only for AoDiscrete

    std::string name() const;
    // "no_irs" | "random_irs" | "ao_continuous" | "ao_q<levels>"
    static Scheme parse(const std::string& text);
};

enum class SweepAxis { PMax, MElements, NR };

SweepAxis parse_axis(const std::string& text);
std::string axis_name(SweepAxis axis);

// Clamped secrecy rate of one scheme on one channel realization. All schemes
// consume the supplied stream identically positioned, so paired comparisons
// across schemes share their random draws.
double run_scheme(const Scheme& scheme, const ChannelSet& chs, double p_max,
                  const AoOptions& opts, RngStream& rng);

struct SweepResult {
    std::string axis;
    std::vector<double> axis_values;
    std::vector<std::string> scheme_names;
    // Indexed [axis point][scheme].
    std::vector<std::vector<double>> mean_rate;
    std::vector<std::vector<double>> std_rate;
    int n_realizations = 0;
    std::vector<double> wall_time_s;  // per axis point
};

// Paired Monte-Carlo over axis values x realizations: every scheme sees the
// identical ChannelSet and the identical scheme stream for a given
// (axis point, realization) cell. Results do not depend on worker count.
SweepResult monte_carlo_sweep(const ScenarioConfig& cfg, const AoOptions& opts,
                              const std::vector<Scheme>& schemes, SweepAxis axis,
                              const std::vector<double>& values, int n_realizations,
                              int workers);

// CSV with header axis,scheme,mean_rate_bps_hz,std_rate_bps_hz,n and LF line
// endings; numbers at 9 significant digits.
void emit_csv(const SweepResult& result, const std::string& path);

// Standalone SVG 1.1 line chart, one series per scheme.
void emit_plot(const SweepResult& result, const std::string& path);

} // namespace secopt
