#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secopt/bench.hpp"

namespace secopt::oracle {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    double seconds = 0.0;
    std::string detail;  // first failure, empty when clean

    bool passed() const { return failures == 0; }
};

// Synthetic problem instance with unit-scale channels; zero_mode knocks out
// the rank-1 contribution of element `m_probe` on the legitimate side (1),
// the eavesdropper side (2), or both (3) to reach the trace-zero branches.
struct RandomInstance {
    ChannelSet chs;
    TxCovariance q;
    ReflectVector theta{ComplexVector::Ones(1)};
    int m_probe = 0;
    double p_max = 0.0;
};

RandomInstance random_instance(int n_t, int n_r, int n_e, int m, RngStream& rng,
                               int zero_mode);

// Per-element optimizer vs exhaustive phase grid evaluated through the full
// secrecy-rate pipeline (no shared code with the closed forms under test).
SuiteResult suite_phase_oracle(int n_cases, int grid_points, std::uint64_t seed);

// R_sec(theta_m) == R_bar(theta_m) + log2 det A_R - log2 det A_E across all
// four trace-condition branches.
SuiteResult suite_eq21_decomposition(int n_cases, std::uint64_t seed);

// Linearized secrecy is a global over-estimator-free lower bound touching at
// the expansion point.
SuiteResult suite_linearization_bound(int n_pairs, std::uint64_t seed);

// Feasibility, PSD, and complementary slackness of the SCA output.
SuiteResult suite_kkt(int n_cases, std::uint64_t seed);

// Full alternating half-step trace is non-decreasing (pre-projection).
SuiteResult suite_monotone_ascent(int n_cases, std::uint64_t seed);

// Grid argmax of the cosine ratio falls inside the predicted interval.
SuiteResult suite_lemma5(int n_cases, int grid_points, std::uint64_t seed);

// Per-element projection equals exhaustive enumeration over all Q^M grids.
SuiteResult suite_projection_enum(int n_cases, std::uint64_t seed);

// The selftest bundle behind the CLI; quick stays under a minute.
std::vector<SuiteResult> run_selftest(bool full, std::uint64_t seed);

} // namespace secopt::oracle
