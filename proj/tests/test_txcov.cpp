#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secopt/rng.hpp"
#include "secopt/txcov.hpp"

using namespace secopt;

namespace {

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

ComplexMatrix random_hpd(int n, double ridge, RngStream& rng) {
    ComplexMatrix x = random_matrix(n, n, rng);
    ComplexMatrix k = x * x.adjoint() + ridge * ComplexMatrix::Identity(n, n);
    return 0.5 * (k + k.adjoint());
}

// Independent reference: classic water-filling capacity of a fixed channel
// under a total power budget, via bisection on the water level.
double capacity_waterfill_reference(const ComplexMatrix& g, double sigma2, double p_max) {
    Eigen::JacobiSVD<ComplexMatrix> svd(g / std::sqrt(sigma2));
    std::vector<double> gains;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double s = svd.singularValues()[i];
        if (s > 1e-12) gains.push_back(s * s);
    }
    double lo = 0.0, hi = p_max + 1.0;
    for (const double gi : gains) hi = std::max(hi, p_max + 1.0 / gi);
    for (int it = 0; it < 200; ++it) {
        const double mu = 0.5 * (lo + hi);
        double used = 0.0;
        for (const double gi : gains) used += std::max(0.0, mu - 1.0 / gi);
        (used > p_max ? hi : lo) = mu;
    }
    double rate = 0.0;
    for (const double gi : gains) {
        const double p = std::max(0.0, 0.5 * (lo + hi) - 1.0 / gi);
        rate += std::log2(1.0 + gi * p);
    }
    return rate;
}

} // namespace

TEST_CASE("linearized_secrecy touches at the expansion point") {
    RngStream rng(41);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix g_tr = random_matrix(3, 3, rng);
        ComplexMatrix g_te = random_matrix(3, 3, rng);
        TxCovariance q = random_psd(3, rng.uniform(0.5, 3.0), rng);
        const double touch = linearized_secrecy(q, q, g_tr, g_te, 0.8, 1.3);
        const double exact = secrecy_rate_channels(g_tr, g_te, q, 0.8, 1.3, false);
        CHECK(touch == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("linearized_secrecy is a global lower bound") {
    RngStream rng(42);
    for (int rep = 0; rep < 100; ++rep) {
        ComplexMatrix g_tr = random_matrix(3, 3, rng);
        ComplexMatrix g_te = random_matrix(3, 3, rng);
        TxCovariance q = random_psd(3, rng.uniform(0.2, 4.0), rng);
        TxCovariance q_tilde = random_psd(3, rng.uniform(0.2, 4.0), rng);
        const double bound = linearized_secrecy(q, q_tilde, g_tr, g_te, 1.0, 1.0);
        const double exact = secrecy_rate_channels(g_tr, g_te, q, 1.0, 1.0, false);
        CHECK(bound <= exact + 1e-9);
    }
}

TEST_CASE("linearized_secrecy with no eavesdropper channel is the legit rate") {
    RngStream rng(43);
    ComplexMatrix g_tr = random_matrix(2, 2, rng);
    ComplexMatrix g_te = ComplexMatrix::Zero(2, 2);
    TxCovariance q = random_psd(2, 1.0, rng);
    for (int rep = 0; rep < 5; ++rep) {
        TxCovariance q_tilde = random_psd(2, rng.uniform(0.1, 2.0), rng);
        CHECK(linearized_secrecy(q, q_tilde, g_tr, g_te, 1.0, 1.0) ==
              doctest::Approx(rate_legit(g_tr, q, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("inner_waterfill scalar closed form") {
    ComplexMatrix g = ComplexMatrix::Ones(1, 1);
    for (double c : {0.3, 1.0, 2.0, 5.0}) {
        ComplexMatrix k = ComplexMatrix::Constant(1, 1, c);
        TxCovariance q = inner_waterfill(g, k, 1.0);
        const double expect = std::max(0.0, 1.0 / (c * std::numbers::ln2) - 1.0);
        CHECK(q.q(0, 0).real() == doctest::Approx(expect).epsilon(1e-12));
    }
    // prohibitive price
    ComplexMatrix k = ComplexMatrix::Constant(1, 1, 1e9);
    CHECK(inner_waterfill(g, k, 1.0).trace() == 0.0);
}

TEST_CASE("inner_waterfill satisfies first-order optimality") {
    RngStream rng(44);
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix g = random_matrix(3, 3, rng);
        ComplexMatrix k = random_hpd(3, 0.3, rng);
        TxCovariance q = inner_waterfill(g, k, 0.7);
        q.check_psd();

        auto objective = [&](const ComplexMatrix& qq) {
            ComplexMatrix m = ComplexMatrix::Identity(3, 3) + g * qq * g.adjoint() / 0.7;
            return std::log2(m.partialPivLu().determinant().real()) -
                   (k * qq).trace().real();
        };
        const double f0 = objective(q.q);
        const double t = 1e-6;
        double worst = 0.0;
        for (int d = 0; d < 200; ++d) {
            ComplexMatrix dir = random_matrix(3, 3, rng);
            dir = 0.5 * (dir + dir.adjoint()).eval();
            ComplexMatrix qq = q.q + t * dir;
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(qq);
            ComplexMatrix proj = es.eigenvectors() *
                                 es.eigenvalues().cwiseMax(0.0).asDiagonal() *
                                 es.eigenvectors().adjoint();
            worst = std::max(worst, (objective(proj) - f0) / t);
        }
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("inner_waterfill rejects indefinite price matrices") {
    ComplexMatrix g = ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(inner_waterfill(g, ComplexMatrix::Zero(2, 2), 1.0), NotPositiveDefinite);
}

TEST_CASE("waterfill trace is non-increasing in lambda") {
    RngStream rng(45);
    ComplexMatrix g = random_matrix(3, 3, rng);
    ComplexMatrix k0 = random_matrix(3, 3, rng);
    k0 = (0.1 * (k0 * k0.adjoint())).eval();
    double prev = 1e300;
    for (double lambda : {0.01, 0.1, 1.0, 10.0}) {
        ComplexMatrix k = k0 + lambda * ComplexMatrix::Identity(3, 3);
        const double tr = inner_waterfill(g, k, 1.0).trace();
        CHECK(tr <= prev + 1e-12);
        prev = tr;
    }
}

TEST_CASE("dual_solve inactive constraint returns lambda zero") {
    RngStream rng(46);
    // strong eavesdropper price keeps the unconstrained optimum small
    ComplexMatrix g_tr = 0.2 * random_matrix(2, 2, rng);
    ComplexMatrix g_te = 5.0 * random_matrix(2, 2, rng);
    TxCovariance q_tilde = TxCovariance::uniform(2, 0.1);
    ScaOptions opts;
    DualResult res = dual_solve(g_tr, g_te, q_tilde, 1.0, 1.0, 1e6, opts);
    CHECK(res.lambda == 0.0);
    CHECK(res.q.trace() < 1e6);
}

TEST_CASE("dual_solve scalar strong-legit case pins the power budget") {
    ComplexMatrix g_tr = ComplexMatrix::Constant(1, 1, 10.0);
    ComplexMatrix g_te = ComplexMatrix::Constant(1, 1, 1.0);
    TxCovariance q_tilde = TxCovariance::uniform(1, 0.05);
    ScaOptions opts;
    const double p_max = 0.1;
    DualResult res = dual_solve(g_tr, g_te, q_tilde, 1.0, 1.0, p_max, opts);
    CHECK(res.lambda > 0.0);
    CHECK(res.q.trace() == doctest::Approx(p_max).epsilon(1e-4));
    CHECK(res.q.trace() <= p_max * (1 + 1e-6));
}

TEST_CASE("dual_solve degenerate wiretap from a zero expansion point") {
    ComplexMatrix g = ComplexMatrix::Ones(1, 1);
    TxCovariance q_tilde = TxCovariance::zero(1);
    ScaOptions opts;
    DualResult res = dual_solve(g, g, q_tilde, 1.0, 1.0, 2.0, opts);
    CHECK(res.q.trace() <= 1e-12);
}

TEST_CASE("sca_optimize with no eavesdropper matches capacity water-filling") {
    RngStream rng(47);
    for (int rep = 0; rep < 5; ++rep) {
        ComplexMatrix g_tr = random_matrix(3, 3, rng);
        ComplexMatrix g_te = ComplexMatrix::Zero(3, 3);
        const double p_max = 4.0, s2 = 0.9;
        auto [q, report] = sca_optimize_channels(g_tr, g_te, s2, 1.0, p_max,
                                                 TxCovariance::uniform(3, p_max),
                                                 ScaOptions{});
        const double got = rate_legit(g_tr, q, s2);
        const double expect = capacity_waterfill_reference(g_tr, s2, p_max);
        CHECK(got == doctest::Approx(expect).epsilon(1e-6));
        CHECK(report.converged);
    }
}

TEST_CASE("sca_optimize symmetric channels yield zero secrecy rate") {
    RngStream rng(48);
    ComplexMatrix g = random_matrix(2, 2, rng);
    auto [q, report] = sca_optimize_channels(g, g, 1.0, 1.0, 2.0,
                                             TxCovariance::uniform(2, 2.0), ScaOptions{});
    CHECK(std::abs(secrecy_rate_channels(g, g, q, 1.0, 1.0, false)) <= 1e-10);
}

TEST_CASE("sca_optimize beats random search on small instances") {
    RngStream rng(49);
    for (int rep = 0; rep < 3; ++rep) {
        ComplexMatrix g_tr = random_matrix(2, 2, rng);
        ComplexMatrix g_te = 0.6 * random_matrix(2, 2, rng);
        const double p_max = 3.0;
        auto [q, report] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                                 TxCovariance::uniform(2, p_max),
                                                 ScaOptions{});
        const double sca_rate = secrecy_rate_channels(g_tr, g_te, q, 1.0, 1.0, false);
        double best = -1e300;
        for (int s = 0; s < 10000; ++s) {
            TxCovariance cand = random_psd(2, rng.uniform(1e-3, 1.0) * p_max, rng);
            best = std::max(best, secrecy_rate_channels(g_tr, g_te, cand, 1.0, 1.0, false));
        }
        CHECK(sca_rate >= best - 1e-3);
    }
}

TEST_CASE("sca_optimize ascends monotonically with feasible iterates") {
    RngStream rng(50);
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix g_tr = random_matrix(4, 4, rng);
        ComplexMatrix g_te = rng.uniform(0.3, 1.2) * random_matrix(4, 4, rng);
        const double p_max = 2.0;
        auto [q, report] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                                 TxCovariance::uniform(4, p_max),
                                                 ScaOptions{});
        for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
            CHECK(report.objective_trace[i] >= report.objective_trace[i - 1] - tol::monotone_slack);
        }
        q.check_feasible(p_max);
    }
}

TEST_CASE("converged SCA point satisfies the stationarity system") {
    // At a fixed point Q*, the subproblem gradient
    //   (1/ln2)(1/sr2) G_R^H W_R^{-1} G_R - (1/ln2)(1/se2) G_E^H W_E^{-1} G_E - lambda I
    // must vanish on the range of Q* and be <= 0 on its null space (the slack
    // PSD multiplier absorbs the rest).
    RngStream rng(52);
    for (int rep = 0; rep < 5; ++rep) {
        const int n = 3;
        ComplexMatrix g_tr = random_matrix(n, n, rng);
        ComplexMatrix g_te = 0.5 * random_matrix(n, n, rng);
        const double p_max = 2.0;
        ScaOptions opts;
        opts.outer_tol = 1e-10;
        opts.max_outer_iters = 400;
        auto [q, report] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                                 TxCovariance::uniform(n, p_max), opts);

        auto w_inv_gram = [&](const ComplexMatrix& g) {
            ComplexMatrix w = ComplexMatrix::Identity(n, n) + g * q.q * g.adjoint();
            return ComplexMatrix(g.adjoint() * w.llt().solve(g) / std::numbers::ln2);
        };
        ComplexMatrix grad = w_inv_gram(g_tr) - w_inv_gram(g_te) -
                             report.lambda * ComplexMatrix::Identity(n, n);

        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q.q);
        for (int i = 0; i < n; ++i) {
            const ComplexVector v = es.eigenvectors().col(i);
            const double directional = (v.adjoint() * grad * v)(0, 0).real();
            if (es.eigenvalues()[i] > 1e-7 * q.trace()) {
                CHECK(std::abs(directional) <= 1e-4);  // active modes: stationary
            } else {
                CHECK(directional <= 1e-4);  // inactive modes: no ascent direction
            }
        }
    }
}

TEST_CASE("subgradient dual variant agrees with bisection") {
    RngStream rng(51);
    ComplexMatrix g_tr = random_matrix(3, 3, rng);
    ComplexMatrix g_te = 0.5 * random_matrix(3, 3, rng);
    const double p_max = 1.5;
    ScaOptions bisect;
    ScaOptions sub;
    sub.dual_method = DualMethod::Subgradient;
    auto [qb, rb] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                          TxCovariance::uniform(3, p_max), bisect);
    auto [qs, rs] = sca_optimize_channels(g_tr, g_te, 1.0, 1.0, p_max,
                                          TxCovariance::uniform(3, p_max), sub);
    const double rate_b = secrecy_rate_channels(g_tr, g_te, qb, 1.0, 1.0, false);
    const double rate_s = secrecy_rate_channels(g_tr, g_te, qs, 1.0, 1.0, false);
    CHECK(rate_s == doctest::Approx(rate_b).epsilon(1e-3));
    qs.check_feasible(p_max);
}
