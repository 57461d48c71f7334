#pragma once

#include "secopt/channel.hpp"
#include "secopt/numerics.hpp"

namespace secopt {

// Transmit covariance Q_s at the AP: Hermitian PSD, trace budget P_max.
struct TxCovariance {
    ComplexMatrix q;

    double trace() const { return q.trace().real(); }

    // Hermitian within tolerance and eigenvalues >= -psd_eig_rel * trace.
    void check_psd(const char* what = "TxCovariance") const;

    // check_psd plus the trace budget with relative slack.
    void check_feasible(double p_max, const char* what = "TxCovariance") const;

    static TxCovariance uniform(int n_t, double p_max);  // (P_max / N_T) I
    static TxCovariance zero(int n_t);
};

// log2 det(I + (1/sigma^2) G Q G^H), computed through the Hermitian EVD of
// the Gram form for stability at high SNR. Nonnegative.
double rate_logdet(const ComplexMatrix& g, const TxCovariance& q, double sigma2);

double rate_legit(const ComplexMatrix& g_tr, const TxCovariance& q, double sigma_r2);
double rate_eave(const ComplexMatrix& g_te, const TxCovariance& q, double sigma_e2);

// R_R - R_E at the given reflecting coefficients; clamped at zero when
// requested (reporting); optimizers use the unclamped value.
double secrecy_rate(const ChannelSet& chs, const ReflectVector& theta,
                    const TxCovariance& q, bool clamp);

// Same, on prebuilt effective channels.
double secrecy_rate_channels(const ComplexMatrix& g_tr, const ComplexMatrix& g_te,
                             const TxCovariance& q, double sigma_r2, double sigma_e2,
                             bool clamp);

} // namespace secopt
