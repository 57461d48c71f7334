#pragma once

#include <utility>
#include <vector>

#include "secopt/channel.hpp"
#include "secopt/secrecy.hpp"

namespace secopt {

enum class DualMethod { Bisection, Subgradient };

struct ScaOptions {
    double outer_tol = 1e-5;        // bits, objective change across SCA rounds
    int max_outer_iters = 100;
    double dual_tol = 0.0;          // watts; 0 means auto = 1e-6 * P_max
    double lambda_max_init = 1.0;
    double lambda_growth = 10.0;
    double pd_floor = 1e-12;
    DualMethod dual_method = DualMethod::Bisection;
    // Diminishing step lambda0 / sqrt(k) for the subgradient variant; the
    // step scale is a guess, the reference text does not give one.
    double subgradient_step0 = 1.0;
    int subgradient_iters = 2000;

    double effective_dual_tol(double p_max) const {
        return dual_tol > 0.0 ? dual_tol : 1e-6 * p_max;
    }
};

// Concave lower bound of the secrecy rate at expansion point q_tilde:
// R_R(Q) - R_E(Q~) - Tr[(1/ln2)(1/sigma_E^2) W_E^{-1} G_TE (Q - Q~) G_TE^H].
double linearized_secrecy(const TxCovariance& q, const TxCovariance& q_tilde,
                          const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                          double sigma_r2, double sigma_e2);

// Closed-form maximizer of log2 det(I + (1/sigma_R^2) G Q G^H) - Tr(K Q) over
// Q >= 0 for Hermitian positive definite K, by whitening and water-filling
// over the singular values of (1/sigma_R) G K^{-1/2}.
TxCovariance inner_waterfill(const ComplexMatrix& g_tr, const ComplexMatrix& k,
                             double sigma_r2);

struct DualResult {
    TxCovariance q;
    double lambda = 0.0;
};

// One convex subproblem: maximize the linearized secrecy over the power ball
// via the scalar Lagrange dual in lambda.
DualResult dual_solve(const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                      const TxCovariance& q_tilde, double sigma_r2, double sigma_e2,
                      double p_max, const ScaOptions& opts);

struct ScaReport {
    std::vector<double> objective_trace;  // unclamped secrecy rate per iterate
    int iterations = 0;
    bool converged = false;
    double lambda = 0.0;
};

// Successive convex approximation on the transmit covariance for fixed
// reflecting coefficients.
std::pair<TxCovariance, ScaReport> sca_optimize_channels(
    const ComplexMatrix& g_tr, const ComplexMatrix& g_te, double sigma_r2,
    double sigma_e2, double p_max, const TxCovariance& q0, const ScaOptions& opts);

std::pair<TxCovariance, ScaReport> sca_optimize(const ChannelSet& chs,
                                                const ReflectVector& theta,
                                                double p_max, const TxCovariance& q0,
                                                const ScaOptions& opts);

} // namespace secopt
