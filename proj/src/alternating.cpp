#include "secopt/alternating.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

namespace secopt {

void AoOptions::validate() const {
    if (theta_tol <= 0) throw ConfigError("ao: theta_tol must be positive");
    if (max_rounds < 1) throw ConfigError("ao: max_rounds must be >= 1");
    if (q_levels != 0 && q_levels < 2) throw BadLevelCount("ao: q_levels must be 0 or >= 2");
}

namespace {

// Sanity ceiling: the legitimate-link capacity with all power on one stream
// bound, log2 det(I + (P_max / sigma_R^2) G_TR G_TR^H), at the current theta.
double capacity_ceiling(const ChannelSet& chs, const ReflectVector& theta, double p_max) {
    ComplexMatrix g_tr = effective_channels(chs, theta).first;
    TxCovariance full{ComplexMatrix::Identity(g_tr.cols(), g_tr.cols()) * p_max};
    return rate_legit(g_tr, full, chs.sigma_r2);
}

} // namespace

OptimizerReport ao_optimize(const ChannelSet& chs, double p_max,
                            const AoOptions& opts, RngStream& rng) {
    opts.validate();
    chs.validate();
    const auto t0 = std::chrono::steady_clock::now();

    OptimizerReport report;
    ReflectVector theta = ReflectVector::uniform_phases(chs.m(), rng);
    TxCovariance q_tilde = TxCovariance::uniform(chs.n_t(), p_max);

    double prev_obj = secrecy_rate(chs, theta, q_tilde, false);
    for (int round = 1; round <= opts.max_rounds; ++round) {
        TxCovariance q_hat = sca_optimize(chs, theta, p_max, q_tilde, opts.sca).first;
        report.objective_trace.push_back(secrecy_rate(chs, theta, q_hat, false));

        ReflectVector theta_hat = optimize_thetas(chs, q_hat, theta, opts.irs).first;
        const double obj = secrecy_rate(chs, theta_hat, q_hat, false);
        report.objective_trace.push_back(obj);
        report.rounds = round;

        if (obj > capacity_ceiling(chs, theta_hat, p_max) + 1e-6) {
            report.ceiling_ok = false;
        }

        const double movement = (theta_hat.theta() - theta.theta()).cwiseAbs().sum();
        theta = std::move(theta_hat);
        q_tilde = std::move(q_hat);
        if (movement <= opts.theta_tol) {
            report.converged = true;
            break;
        }
        if (opts.objective_tol > 0 && std::abs(obj - prev_obj) <= opts.objective_tol) {
            report.converged = true;
            break;
        }
        prev_obj = obj;
    }

    report.final_q = std::move(q_tilde);
    report.final_theta = std::move(theta);
    report.secrecy_rate_clamped =
        secrecy_rate(chs, report.final_theta, report.final_q, true);
    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

ReflectVector project_discrete(const ReflectVector& theta, int q_levels) {
    if (q_levels < 2) throw BadLevelCount("project_discrete: q_levels must be >= 2");
    ComplexVector out(theta.size());
    for (int m = 0; m < theta.size(); ++m) {
        int best_q = 0;
        double best_d = std::abs(theta[m] - std::polar(1.0, 0.0));
        for (int q = 1; q < q_levels; ++q) {
            const double d = std::abs(theta[m] - std::polar(1.0, 2.0 * std::numbers::pi * q / q_levels));
            if (d < best_d) {  // strict: ties keep the smaller index
                best_d = d;
                best_q = q;
            }
        }
        out[m] = std::polar(1.0, 2.0 * std::numbers::pi * best_q / q_levels);
    }
    return ReflectVector(std::move(out));
}

OptimizerReport ao_discrete(const ChannelSet& chs, double p_max,
                            const AoOptions& opts, RngStream& rng) {
    if (opts.q_levels < 2) throw BadLevelCount("ao_discrete: q_levels must be >= 2");
    OptimizerReport report = ao_optimize(chs, p_max, opts, rng);
    const auto t0 = std::chrono::steady_clock::now();

    report.final_theta = project_discrete(report.final_theta, opts.q_levels);
    if (opts.reoptimize_q_after_projection) {
        report.final_q =
            sca_optimize(chs, report.final_theta, p_max, report.final_q, opts.sca).first;
    }
    report.objective_trace.push_back(
        secrecy_rate(chs, report.final_theta, report.final_q, false));
    report.secrecy_rate_clamped =
        secrecy_rate(chs, report.final_theta, report.final_q, true);
    report.wall_time_s +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace secopt
