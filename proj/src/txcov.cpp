#include "secopt/txcov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace secopt {

namespace {

ComplexMatrix hermitize(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

// W_E at the expansion point: I + (1/sigma_E^2) G_TE Q~ G_TE^H.
ComplexMatrix w_eave(const ComplexMatrix& g_te, const TxCovariance& q_tilde, double sigma_e2) {
    const Eigen::Index ne = g_te.rows();
    return ComplexMatrix::Identity(ne, ne) + g_te * q_tilde.q * g_te.adjoint() / sigma_e2;
}

// Price matrix of the linearized eavesdropper term,
// (1/ln2)(1/sigma_E^2) G_TE^H W_E^{-1} G_TE.
ComplexMatrix price_matrix(const ComplexMatrix& g_te, const TxCovariance& q_tilde,
                           double sigma_e2) {
    ComplexMatrix we = w_eave(g_te, q_tilde, sigma_e2);
    ComplexMatrix k0 = g_te.adjoint() * we.llt().solve(g_te) / (sigma_e2 * std::numbers::ln2);
    return hermitize(k0);
}

} // namespace

double linearized_secrecy(const TxCovariance& q, const TxCovariance& q_tilde,
                          const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                          double sigma_r2, double sigma_e2) {
    q.check_psd("linearized_secrecy: Q");
    q_tilde.check_psd("linearized_secrecy: Q~");
    const double r_r = rate_legit(g_tr, q, sigma_r2);
    const double r_e_tilde = rate_eave(g_te, q_tilde, sigma_e2);
    ComplexMatrix k0 = price_matrix(g_te, q_tilde, sigma_e2);
    const double correction = (k0 * (q.q - q_tilde.q)).trace().real();
    return r_r - r_e_tilde - correction;
}

TxCovariance inner_waterfill(const ComplexMatrix& g_tr, const ComplexMatrix& k,
                             double sigma_r2) {
    check_finite(k, "inner_waterfill: K");
    if (k.rows() != k.cols() || g_tr.cols() != k.rows()) {
        throw ShapeMismatch("inner_waterfill: shapes disagree");
    }
    if (!is_hermitian(k)) throw NotHermitian("inner_waterfill: K not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k);
    if (es.info() != Eigen::Success) throw NumericalFailure("inner_waterfill: EVD failed");
    if (es.eigenvalues().minCoeff() <= tol::pd_floor) {
        throw NotPositiveDefinite("inner_waterfill: K not positive definite");
    }

    const Eigen::Index nt = k.rows();
    ComplexMatrix k_inv_sqrt = es.eigenvectors() *
                               es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.eigenvectors().adjoint();

    ComplexMatrix f = g_tr * k_inv_sqrt / std::sqrt(sigma_r2);
    Eigen::JacobiSVD<ComplexMatrix> svd(f, Eigen::ComputeFullV);

    RealVector p = RealVector::Zero(nt);
    const auto& s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s[i] > 0.0) {
            p[i] = std::max(0.0, 1.0 / std::numbers::ln2 - 1.0 / (s[i] * s[i]));
        }
    }
    ComplexMatrix x = svd.matrixV() * p.asDiagonal() * svd.matrixV().adjoint();
    return {hermitize(k_inv_sqrt * x * k_inv_sqrt)};
}

namespace {

struct WaterfillEval {
    TxCovariance q;
    double trace;
};

WaterfillEval eval_at_lambda(const ComplexMatrix& g_tr, const ComplexMatrix& k0,
                             double sigma_r2, double lambda) {
    ComplexMatrix k = k0 + lambda * ComplexMatrix::Identity(k0.rows(), k0.cols());
    TxCovariance q = inner_waterfill(g_tr, k, sigma_r2);
    const double tr = q.trace();
    return {std::move(q), tr};
}

DualResult dual_bisection(const ComplexMatrix& g_tr, const ComplexMatrix& k0,
                          double sigma_r2, double p_max, const ScaOptions& opts) {
    const double slack_tol = opts.effective_dual_tol(p_max);

    double lambda_hi = opts.lambda_max_init;
    WaterfillEval hi = eval_at_lambda(g_tr, k0, sigma_r2, lambda_hi);
    int growths = 0;
    while (hi.trace > p_max) {
        if (++growths > 60) {
            throw BracketingFailure("dual_solve: power constraint unsatisfiable");
        }
        lambda_hi *= opts.lambda_growth;
        hi = eval_at_lambda(g_tr, k0, sigma_r2, lambda_hi);
    }

    // Bisect until complementary slackness holds AND the bracket has
    // collapsed; the tight bracket keeps the inner maximizer accurate enough
    // that the outer SCA ascent stays monotone to well below 1e-8 bits.
    double lambda_lo = 0.0;  // infeasible side (trace > p_max, possibly at 0+)
    for (int it = 0; it < 200; ++it) {
        const double slack = std::abs(lambda_hi * (hi.trace - p_max));
        const bool slack_ok = slack <= slack_tol * std::max(1.0, lambda_hi);
        const bool bracket_ok = (lambda_hi - lambda_lo) <= 1e-11 * std::max(1.0, lambda_hi);
        if (slack_ok && bracket_ok) break;
        const double mid = 0.5 * (lambda_lo + lambda_hi);
        if (mid <= lambda_lo || mid >= lambda_hi) break;  // interval exhausted
        WaterfillEval m = eval_at_lambda(g_tr, k0, sigma_r2, mid);
        if (m.trace > p_max) {
            lambda_lo = mid;
        } else {
            lambda_hi = mid;
            hi = std::move(m);
        }
    }
    return {std::move(hi.q), lambda_hi};
}

DualResult dual_subgradient(const ComplexMatrix& g_tr, const ComplexMatrix& k0,
                            double sigma_r2, double p_max, const ScaOptions& opts) {
    const double slack_tol = opts.effective_dual_tol(p_max);
    const double lambda_floor = 1e-12;
    double lambda = std::max(opts.lambda_max_init, lambda_floor);

    bool have_best = false;
    double best_slack = std::numeric_limits<double>::infinity();
    WaterfillEval best;
    double best_lambda = lambda;

    for (int k = 1; k <= opts.subgradient_iters; ++k) {
        WaterfillEval cur = eval_at_lambda(g_tr, k0, sigma_r2, lambda);
        const double violation = cur.trace - p_max;
        if (violation <= p_max * tol::trace_budget_rel) {
            const double slack = std::abs(lambda * violation);
            if (slack < best_slack) {
                have_best = true;
                best_slack = slack;
                best = std::move(cur);
                best_lambda = lambda;
            }
            if (best_slack <= slack_tol * std::max(1.0, best_lambda)) break;
        }
        lambda = std::max(lambda_floor, lambda + opts.subgradient_step0 / std::sqrt(double(k)) * violation);
    }
    if (!have_best) {
        // diminishing steps never reached the feasible region; fall back to
        // the bracketing search rather than return an infeasible iterate
        return dual_bisection(g_tr, k0, sigma_r2, p_max, opts);
    }
    return {std::move(best.q), best_lambda};
}

} // namespace

DualResult dual_solve(const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                      const TxCovariance& q_tilde, double sigma_r2, double sigma_e2,
                      double p_max, const ScaOptions& opts) {
    if (p_max <= 0) throw ConfigError("dual_solve: p_max must be positive");
    ComplexMatrix k0 = price_matrix(g_te, q_tilde, sigma_e2);

    // Inactive power constraint: the unconstrained maximizer may already fit.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k0, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() > opts.pd_floor) {
        TxCovariance q0 = inner_waterfill(g_tr, k0, sigma_r2);
        if (q0.trace() <= p_max) {
            return {std::move(q0), 0.0};
        }
    }

    if (opts.dual_method == DualMethod::Subgradient) {
        return dual_subgradient(g_tr, k0, sigma_r2, p_max, opts);
    }
    return dual_bisection(g_tr, k0, sigma_r2, p_max, opts);
}

std::pair<TxCovariance, ScaReport> sca_optimize_channels(
    const ComplexMatrix& g_tr, const ComplexMatrix& g_te, double sigma_r2,
    double sigma_e2, double p_max, const TxCovariance& q0, const ScaOptions& opts) {
    q0.check_feasible(p_max, "sca_optimize: q0");

    ScaReport report;
    TxCovariance q_tilde = q0;
    double r_prev = secrecy_rate_channels(g_tr, g_te, q_tilde, sigma_r2, sigma_e2, false);
    report.objective_trace.push_back(r_prev);

    for (int it = 1; it <= opts.max_outer_iters; ++it) {
        DualResult step = dual_solve(g_tr, g_te, q_tilde, sigma_r2, sigma_e2, p_max, opts);
        const double r = secrecy_rate_channels(g_tr, g_te, step.q, sigma_r2, sigma_e2, false);
        report.iterations = it;
        if (r < r_prev) {
            // The exact inner maximizer cannot decrease the objective; a dip
            // is dual-tolerance noise, so the previous iterate stands.
            report.converged = true;
            break;
        }
        q_tilde = std::move(step.q);
        report.lambda = step.lambda;
        report.objective_trace.push_back(r);
        if (std::abs(r - r_prev) <= opts.outer_tol) {
            report.converged = true;
            break;
        }
        r_prev = r;
    }
    return {std::move(q_tilde), std::move(report)};
}

std::pair<TxCovariance, ScaReport> sca_optimize(const ChannelSet& chs,
                                                const ReflectVector& theta,
                                                double p_max, const TxCovariance& q0,
                                                const ScaOptions& opts) {
    auto [g_tr, g_te] = effective_channels(chs, theta);
    return sca_optimize_channels(g_tr, g_te, chs.sigma_r2, chs.sigma_e2, p_max, q0, opts);
}

} // namespace secopt
