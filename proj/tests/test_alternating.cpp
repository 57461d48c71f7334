#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secopt/alternating.hpp"

using namespace secopt;

namespace {

constexpr double kPi = std::numbers::pi;

ChannelSet small_scenario(std::uint64_t realization, int m = 6) {
    ScenarioConfig cfg;
    cfg.n_t = 3;
    cfg.n_r = 2;
    cfg.n_e = 2;
    cfg.m_elements = m;
    return scenario_channels(cfg, realization);
}

} // namespace

TEST_CASE("ao_optimize is deterministic given the stream") {
    ChannelSet chs = small_scenario(0);
    AoOptions opts;
    RngStream rng1 = RngStream::derive(5, {rng_realm::scheme, 0});
    RngStream rng2 = RngStream::derive(5, {rng_realm::scheme, 0});
    OptimizerReport a = ao_optimize(chs, 1.0, opts, rng1);
    OptimizerReport b = ao_optimize(chs, 1.0, opts, rng2);
    CHECK(a.secrecy_rate_clamped == b.secrecy_rate_clamped);
    CHECK((a.final_theta.theta() - b.final_theta.theta()).norm() == 0.0);
    CHECK((a.final_q.q - b.final_q.q).norm() == 0.0);
    CHECK(a.rounds == b.rounds);
}

TEST_CASE("ao_optimize with disconnected IRS reduces to plain SCA") {
    ChannelSet chs = small_scenario(1);
    chs.h_sr.setZero();
    chs.h_se.setZero();
    AoOptions opts;
    RngStream rng = RngStream::derive(6, {rng_realm::scheme, 0});
    OptimizerReport report = ao_optimize(chs, 1.0, opts, rng);
    CHECK(report.rounds == 1);
    CHECK(report.converged);

    auto [q, sca_report] = sca_optimize_channels(chs.h_tr, chs.h_te, chs.sigma_r2,
                                                 chs.sigma_e2, 1.0,
                                                 TxCovariance::uniform(3, 1.0),
                                                 opts.sca);
    const double direct = secrecy_rate_channels(chs.h_tr, chs.h_te, q, chs.sigma_r2,
                                                chs.sigma_e2, true);
    CHECK(report.secrecy_rate_clamped == doctest::Approx(direct).epsilon(1e-6));
}

TEST_CASE("ao_optimize trace ascends and respects the ceiling") {
    AoOptions opts;
    for (std::uint64_t r = 0; r < 3; ++r) {
        ChannelSet chs = small_scenario(r);
        RngStream rng = RngStream::derive(7, {rng_realm::scheme, r});
        OptimizerReport report = ao_optimize(chs, 1.0, opts, rng);
        for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
            CHECK(report.objective_trace[i] >= report.objective_trace[i - 1] - tol::monotone_slack);
        }
        CHECK(report.ceiling_ok);
        report.final_q.check_feasible(1.0);
    }
}

TEST_CASE("inferior geometry still ascends and clamps sanely") {
    ScenarioConfig cfg;
    std::swap(cfg.user_pos, cfg.eave_pos);  // eavesdropper closer than the user
    cfg.n_t = 3;
    cfg.n_r = 2;
    cfg.n_e = 2;
    cfg.m_elements = 8;
    AoOptions opts;
    for (std::uint64_t r = 0; r < 3; ++r) {
        ChannelSet chs = scenario_channels(cfg, r);
        RngStream rng = RngStream::derive(13, {rng_realm::scheme, r});
        OptimizerReport report = ao_optimize(chs, cfg.p_max_w, opts, rng);
        for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
            CHECK(report.objective_trace[i] >= report.objective_trace[i - 1] - tol::monotone_slack);
        }
        CHECK(report.secrecy_rate_clamped >= 0.0);
        report.final_q.check_feasible(cfg.p_max_w);
    }
}

TEST_CASE("project_discrete nearest grid point") {
    ReflectVector theta(ComplexVector::Constant(1, std::polar(1.0, 0.7)));
    ReflectVector out = project_discrete(theta, 2);
    CHECK(out[0] == Complex(1.0, 0.0));

    // already on the grid: unchanged
    const Complex on_grid = std::polar(1.0, 2.0 * kPi * 3 / 8);
    ReflectVector theta2(ComplexVector::Constant(1, on_grid));
    CHECK(project_discrete(theta2, 8)[0] == on_grid);

    CHECK_THROWS_AS(project_discrete(theta, 1), BadLevelCount);
    CHECK_THROWS_AS(project_discrete(theta, 0), BadLevelCount);
}

TEST_CASE("project_discrete lands exactly on the phase grid") {
    RngStream rng(81);
    for (int q_levels : {2, 8, 32}) {
        ReflectVector theta = ReflectVector::uniform_phases(8, rng);
        ReflectVector out = project_discrete(theta, q_levels);
        for (int m = 0; m < out.size(); ++m) {
            CHECK(std::abs(std::abs(out[m]) - 1.0) <= 1e-12);
            double phase = std::arg(out[m]);
            if (phase < 0) phase += 2 * kPi;
            const double steps = phase / (2 * kPi / q_levels);
            CHECK(std::abs(steps - std::round(steps)) <= 1e-12 * q_levels);
        }
    }
}

TEST_CASE("ao_discrete approaches the continuous rate as the grid refines") {
    ChannelSet chs = small_scenario(2);
    AoOptions opts;
    RngStream rng_c = RngStream::derive(9, {rng_realm::scheme, 0});
    OptimizerReport cont = ao_optimize(chs, 1.0, opts, rng_c);

    AoOptions fine = opts;
    fine.q_levels = 4096;
    RngStream rng_d = RngStream::derive(9, {rng_realm::scheme, 0});
    OptimizerReport disc = ao_discrete(chs, 1.0, fine, rng_d);
    CHECK(disc.secrecy_rate_clamped ==
          doctest::Approx(cont.secrecy_rate_clamped).epsilon(1e-3));
}

TEST_CASE("projection from the shared continuous run never gains rate") {
    AoOptions opts;
    for (std::uint64_t r = 0; r < 3; ++r) {
        ChannelSet chs = small_scenario(r);
        RngStream rng_c = RngStream::derive(10, {rng_realm::scheme, r});
        OptimizerReport cont = ao_optimize(chs, 1.0, opts, rng_c);

        for (int q_levels : {2, 8}) {
            AoOptions d = opts;
            d.q_levels = q_levels;
            RngStream rng_d = RngStream::derive(10, {rng_realm::scheme, r});
            OptimizerReport disc = ao_discrete(chs, 1.0, d, rng_d);
            CHECK(disc.secrecy_rate_clamped <= cont.secrecy_rate_clamped + 1e-9);
        }
    }
}

TEST_CASE("ao_discrete with disconnected IRS is unaffected by projection") {
    ChannelSet chs = small_scenario(3);
    chs.h_sr.setZero();
    chs.h_se.setZero();
    AoOptions opts;
    opts.q_levels = 2;
    RngStream rng_d = RngStream::derive(11, {rng_realm::scheme, 0});
    OptimizerReport disc = ao_discrete(chs, 1.0, opts, rng_d);
    RngStream rng_c = RngStream::derive(11, {rng_realm::scheme, 0});
    AoOptions cont_opts;
    OptimizerReport cont = ao_optimize(chs, 1.0, cont_opts, rng_c);
    CHECK(disc.secrecy_rate_clamped == doctest::Approx(cont.secrecy_rate_clamped).epsilon(1e-12));
}

TEST_CASE("ao_discrete optionally refines the covariance after projection") {
    ChannelSet chs = small_scenario(4);
    AoOptions opts;
    opts.q_levels = 2;
    RngStream rng_a = RngStream::derive(12, {rng_realm::scheme, 0});
    OptimizerReport plain = ao_discrete(chs, 1.0, opts, rng_a);

    AoOptions refined = opts;
    refined.reoptimize_q_after_projection = true;
    RngStream rng_b = RngStream::derive(12, {rng_realm::scheme, 0});
    OptimizerReport better = ao_discrete(chs, 1.0, refined, rng_b);
    CHECK(better.secrecy_rate_clamped >= plain.secrecy_rate_clamped - 1e-9);
}

TEST_CASE("AoOptions validation") {
    AoOptions opts;
    opts.q_levels = 1;
    CHECK_THROWS_AS(opts.validate(), BadLevelCount);
    opts.q_levels = 0;
    opts.max_rounds = 0;
    CHECK_THROWS_AS(opts.validate(), ConfigError);
}
