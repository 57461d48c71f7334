#include "secopt/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace secopt {

void TxCovariance::check_psd(const char* what) const {
    check_finite(q, what);
    if (q.rows() != q.cols()) throw ShapeMismatch(std::string(what) + ": not square");
    if (!is_hermitian(q)) throw NotPsd(std::string(what) + ": not Hermitian");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q, Eigen::EigenvaluesOnly);
    const double floor = -tol::psd_eig_rel * std::max(trace(), 1e-300);
    if (es.eigenvalues().minCoeff() < floor) {
        throw NotPsd(std::string(what) + ": eigenvalue below PSD tolerance");
    }
}

void TxCovariance::check_feasible(double p_max, const char* what) const {
    check_psd(what);
    if (trace() > p_max * (1.0 + tol::trace_budget_rel)) {
        throw NotPsd(std::string(what) + ": trace exceeds power budget");
    }
}

TxCovariance TxCovariance::uniform(int n_t, double p_max) {
    return {ComplexMatrix::Identity(n_t, n_t) * (p_max / n_t)};
}

TxCovariance TxCovariance::zero(int n_t) {
    return {ComplexMatrix::Zero(n_t, n_t)};
}

double rate_logdet(const ComplexMatrix& g, const TxCovariance& q, double sigma2) {
    if (sigma2 <= 0) throw ConfigError("rate: noise power must be positive");
    if (g.cols() != q.q.rows()) throw ShapeMismatch("rate: G and Q disagree");
    q.check_psd("rate: Q");
    ComplexMatrix gram = g * q.q * g.adjoint() / sigma2;
    gram = 0.5 * (gram + gram.adjoint()).eval();  // kill rounding skew
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram, Eigen::EigenvaluesOnly);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        acc += std::log1p(std::max(es.eigenvalues()[i], 0.0));
    }
    return acc / std::numbers::ln2;
}

double rate_legit(const ComplexMatrix& g_tr, const TxCovariance& q, double sigma_r2) {
    return rate_logdet(g_tr, q, sigma_r2);
}

double rate_eave(const ComplexMatrix& g_te, const TxCovariance& q, double sigma_e2) {
    return rate_logdet(g_te, q, sigma_e2);
}

double secrecy_rate_channels(const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                             const TxCovariance& q, double sigma_r2, double sigma_e2,
                             bool clamp) {
    const double r = rate_logdet(g_tr, q, sigma_r2) - rate_logdet(g_te, q, sigma_e2);
    return clamp ? std::max(0.0, r) : r;
}

double secrecy_rate(const ChannelSet& chs, const ReflectVector& theta,
                    const TxCovariance& q, bool clamp) {
    auto [g_tr, g_te] = effective_channels(chs, theta);
    return secrecy_rate_channels(g_tr, g_te, q, chs.sigma_r2, chs.sigma_e2, clamp);
}

} // namespace secopt
