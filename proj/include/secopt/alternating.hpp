#pragma once

#include <vector>

#include "secopt/irsopt.hpp"
#include "secopt/rng.hpp"
#include "secopt/txcov.hpp"

namespace secopt {

struct AoOptions {
    double theta_tol = 1e-4;  // sum_m |theta_hat_m - theta_m| across one round
    int max_rounds = 30;
    ScaOptions sca;
    IrsOptions irs;
    int q_levels = 0;  // 0 = continuous, >= 2 = discrete projection grid
    bool reoptimize_q_after_projection = false;
    // Optional secondary stopping rule on the objective change per round;
    // 0 disables it (the primary criterion is theta movement).
    double objective_tol = 0.0;

    void validate() const;
};

struct OptimizerReport {
    // Unclamped secrecy rate after every half step (covariance update, then
    // phase update), non-decreasing up to the optional projection entry.
    std::vector<double> objective_trace;
    int rounds = 0;
    bool converged = false;
    TxCovariance final_q;
    ReflectVector final_theta{ComplexVector::Ones(1)};
    double secrecy_rate_clamped = 0.0;
    double wall_time_s = 0.0;
    // True if every round respected the no-eavesdropper capacity ceiling.
    bool ceiling_ok = true;
};

// Alternating optimization: SCA covariance update, then per-element phase
// sweeps, until the coefficients stop moving. Deterministic given rng.
OptimizerReport ao_optimize(const ChannelSet& chs, double p_max,
                            const AoOptions& opts, RngStream& rng);

// Nearest point of the Q-level phase grid, per element, ties toward the
// smaller grid index.
ReflectVector project_discrete(const ReflectVector& theta, int q_levels);

// Continuous run followed by grid projection; the reported rate is
// re-evaluated at the projected coefficients.
OptimizerReport ao_discrete(const ChannelSet& chs, double p_max,
                            const AoOptions& opts, RngStream& rng);

} // namespace secopt
