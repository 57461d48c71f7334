#include "secopt/oracles.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "secopt/irsopt.hpp"

namespace secopt::oracle {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

ComplexMatrix random_matrix(int rows, int cols, RngStream& rng) {
    ComplexMatrix h(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) h(r, c) = rng.cgauss();
    return h;
}

TxCovariance random_psd(int n, double trace_target, RngStream& rng) {
    ComplexMatrix x = random_matrix(n, n, rng);
    ComplexMatrix q = x * x.adjoint();
    q *= trace_target / q.trace().real();
    return {0.5 * (q + q.adjoint())};
}

} // namespace

RandomInstance random_instance(int n_t, int n_r, int n_e, int m, RngStream& rng,
                               int zero_mode) {
    RandomInstance inst;
    inst.chs.h_tr = random_matrix(n_r, n_t, rng);
    inst.chs.h_te = random_matrix(n_e, n_t, rng);
    inst.chs.h_sr = random_matrix(n_r, m, rng);
    inst.chs.h_se = random_matrix(n_e, m, rng);
    inst.chs.h_ts = random_matrix(m, n_t, rng);
    inst.chs.sigma_r2 = 1.0;
    inst.chs.sigma_e2 = 1.0;
    inst.p_max = 5.0;
    inst.m_probe = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(m));
    if (zero_mode == 1 || zero_mode == 3) inst.chs.h_sr.col(inst.m_probe).setZero();
    if (zero_mode == 2 || zero_mode == 3) inst.chs.h_se.col(inst.m_probe).setZero();
    inst.q = random_psd(n_t, inst.p_max * rng.uniform(0.3, 1.0), rng);
    inst.theta = ReflectVector::uniform_phases(m, rng);
    return inst;
}

SuiteResult suite_phase_oracle(int n_cases, int grid_points, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "phase_grid_oracle";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 1});
    IrsOptions opts;

    for (int c = 0; c < n_cases; ++c) {
        const int zero_mode = (c % 4 == 2) ? 1 : (c % 4 == 3) ? 2 : 0;
        RandomInstance inst = random_instance(2, 2, 2, 4, rng, zero_mode);
        const int m = inst.m_probe;

        ElementSubproblem sub = element_subproblem(inst.chs, inst.q, inst.theta, m);
        const Complex theta_hat = optimal_theta_m(sub, opts).first;

        auto eval = [&](Complex tm) {
            ReflectVector t = inst.theta;
            t.set(m, tm);
            return secrecy_rate(inst.chs, t, inst.q, false);
        };
        double best = -1e300;
        for (int g = 0; g < grid_points; ++g) {
            best = std::max(best, eval(std::polar(1.0, two_pi * g / grid_points)));
        }
        const double achieved = eval(theta_hat);

        ++result.cases;
        if (achieved < best - 1e-6) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "case " << c << ": achieved " << achieved << " < grid best " << best;
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_eq21_decomposition(int n_cases, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "eq21_decomposition";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 2});

    for (int c = 0; c < n_cases; ++c) {
        const int zero_mode = c % 4;  // spans all four trace-condition branches
        RandomInstance inst = random_instance(3, 2, 2, 4, rng, zero_mode);
        const int m = inst.m_probe;

        ElementSubproblem sub = element_subproblem(inst.chs, inst.q, inst.theta, m);
        const Rank1Spectrum spectrum_r = rank1_spectrum(sub.j_r, sub.a_r);
        const Rank1Spectrum spectrum_e = rank1_spectrum(sub.j_e, sub.a_e);
        const double const_part =
            (logdet_hpd(sub.a_r) - logdet_hpd(sub.a_e)) / std::numbers::ln2;

        const Complex tm = std::polar(1.0, rng.uniform(0.0, two_pi));
        ReflectVector t = inst.theta;
        t.set(m, tm);
        const double direct = secrecy_rate(inst.chs, t, inst.q, false);
        const double decomposed = rbar_value(sub, spectrum_r, spectrum_e, tm) + const_part;

        ++result.cases;
        if (std::abs(direct - decomposed) > 1e-9) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "case " << c << " (branch " << zero_mode << "): direct " << direct
                   << " vs decomposed " << decomposed;
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_linearization_bound(int n_pairs, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "linearization_bound";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 3});

    for (int c = 0; c < n_pairs; ++c) {
        const int n_t = 3, n_r = 3, n_e = 3;
        ComplexMatrix g_tr = random_matrix(n_r, n_t, rng);
        ComplexMatrix g_te = random_matrix(n_e, n_t, rng);
        const double p_max = 5.0;
        TxCovariance q = random_psd(n_t, p_max * rng.uniform(0.2, 1.0), rng);
        TxCovariance q_tilde = random_psd(n_t, p_max * rng.uniform(0.2, 1.0), rng);

        const double bound = linearized_secrecy(q, q_tilde, g_tr, g_te, 1.0, 1.0);
        const double exact = secrecy_rate_channels(g_tr, g_te, q, 1.0, 1.0, false);
        const double touch = linearized_secrecy(q_tilde, q_tilde, g_tr, g_te, 1.0, 1.0);
        const double exact_tilde = secrecy_rate_channels(g_tr, g_te, q_tilde, 1.0, 1.0, false);

        ++result.cases;
        const bool bad_bound = bound > exact + 1e-9;
        const bool bad_touch = std::abs(touch - exact_tilde) > 1e-10;
        if (bad_bound || bad_touch) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "case " << c << (bad_bound ? ": bound above exact" : ": touch violated");
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_kkt(int n_cases, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "kkt_duality";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 4});
    ScaOptions opts;

    for (int c = 0; c < n_cases; ++c) {
        const int n_t = 4, n_r = 4, n_e = 4;
        // Mix of stronger / weaker eavesdropper channels so both active and
        // inactive power constraints occur.
        const double eave_gain = rng.uniform(0.2, 1.5);
        ComplexMatrix g_tr = random_matrix(n_r, n_t, rng);
        ComplexMatrix g_te = eave_gain * random_matrix(n_e, n_t, rng);
        const double p_max = 2.0;

        auto [q, report] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                                 TxCovariance::uniform(n_t, p_max), opts);

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q.q, Eigen::EigenvaluesOnly);
        const double tr = q.trace();
        const bool feasible = tr <= p_max * (1.0 + 1e-6);
        const bool psd = es.eigenvalues().minCoeff() >= -1e-9 * tr;
        const double slack = std::abs(report.lambda * (tr - p_max));
        const bool comp_slack = slack <= 1e-4 * std::max(1.0, report.lambda * p_max);

        ++result.cases;
        if (!feasible || !psd || !comp_slack) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "case " << c << ": feasible=" << feasible << " psd=" << psd
                   << " slack=" << slack;
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_monotone_ascent(int n_cases, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "monotone_ascent";
    ScenarioConfig cfg;  // reference scenario
    cfg.master_seed = seed;
    AoOptions opts;

    for (int c = 0; c < n_cases; ++c) {
        const ChannelSet chs = scenario_channels(cfg, static_cast<std::uint64_t>(c));
        RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 5, static_cast<std::uint64_t>(c)});
        OptimizerReport report = ao_optimize(chs, cfg.p_max_w, opts, rng);

        bool monotone = true;
        for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
            if (report.objective_trace[i] < report.objective_trace[i - 1] - tol::monotone_slack) {
                monotone = false;
                break;
            }
        }
        ++result.cases;
        if (!monotone || !report.ceiling_ok) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "realization " << c << (monotone ? ": ceiling violated" : ": trace decreased");
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_lemma5(int n_cases, int grid_points, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "lemma5_interval";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 6});

    for (int c = 0; c < n_cases; ++c) {
        const double b = rng.uniform(0.05, 5.0);
        const double a = b + rng.uniform(0.01, 5.0);
        const double d = rng.uniform(0.05, 5.0);
        const double cc = d + rng.uniform(0.01, 5.0);
        const double omega = rng.uniform(0.0, two_pi);

        double best_x = 0.0, best_f = -1e300;
        for (int g = 0; g < grid_points; ++g) {
            const double x = two_pi * g / grid_points;
            const double f = (a + b * std::cos(x)) / (cc + d * std::cos(x + omega));
            if (f > best_f) { best_f = f; best_x = x; }
        }
        const PhaseInterval iv = lemma5_interval(omega);
        const double pad = two_pi / grid_points;
        const bool inside = (best_x >= iv.lo - pad && best_x <= iv.hi + pad) ||
                            (best_x + two_pi >= iv.lo - pad && best_x + two_pi <= iv.hi + pad) ||
                            (best_x - two_pi >= iv.lo - pad && best_x - two_pi <= iv.hi + pad);
        ++result.cases;
        if (!inside) {
            ++result.failures;
            if (result.detail.empty()) {
                std::ostringstream os;
                os << "case " << c << ": omega " << omega << ", argmax " << best_x
                   << " outside [" << iv.lo << ", " << iv.hi << "]";
                result.detail = os.str();
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

SuiteResult suite_projection_enum(int n_cases, std::uint64_t seed) {
    Stopwatch watch;
    SuiteResult result;
    result.name = "projection_enumeration";
    RngStream rng = RngStream::derive(seed, {rng_realm::selftest, 7});
    const int m = 3, q_levels = 2;

    for (int c = 0; c < n_cases; ++c) {
        ReflectVector theta = ReflectVector::uniform_phases(m, rng);
        ReflectVector projected = project_discrete(theta, q_levels);

        // Exhaustive search over all q_levels^m grid vectors; the index
        // enumeration order makes the first minimizer the smallest-q one.
        double best_cost = 1e300;
        ComplexVector best(m);
        for (int code = 0; code < 8; ++code) {
            ComplexVector cand(m);
            double cost = 0.0;
            for (int i = 0; i < m; ++i) {
                const int qi = (code >> i) & 1;
                cand[i] = std::polar(1.0, two_pi * qi / q_levels);
                cost += std::abs(theta[i] - cand[i]);
            }
            if (cost < best_cost) {
                best_cost = cost;
                best = cand;
            }
        }
        ++result.cases;
        if (!projected.theta().isApprox(best, 0.0)) {
            ++result.failures;
            if (result.detail.empty()) {
                result.detail = "case " + std::to_string(c) + ": projection != enumeration";
            }
        }
    }
    result.seconds = watch.seconds();
    return result;
}

std::vector<SuiteResult> run_selftest(bool full, std::uint64_t seed) {
    std::vector<SuiteResult> out;
    if (full) {
        out.push_back(suite_phase_oracle(200, 10000, seed));
        out.push_back(suite_eq21_decomposition(100, seed));
        out.push_back(suite_linearization_bound(100, seed));
        out.push_back(suite_kkt(50, seed));
        out.push_back(suite_monotone_ascent(50, seed));
        out.push_back(suite_lemma5(1000, 100000, seed));
        out.push_back(suite_projection_enum(200, seed));
    } else {
        out.push_back(suite_phase_oracle(40, 2000, seed));
        out.push_back(suite_eq21_decomposition(40, seed));
        out.push_back(suite_linearization_bound(40, seed));
        out.push_back(suite_kkt(10, seed));
        out.push_back(suite_monotone_ascent(4, seed));
        out.push_back(suite_lemma5(200, 20000, seed));
        out.push_back(suite_projection_enum(80, seed));
    }
    return out;
}

} // namespace secopt::oracle
