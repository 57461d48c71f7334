#pragma once

#include <utility>
#include <vector>

#include "secopt/channel.hpp"
#include "secopt/secrecy.hpp"

namespace secopt {

struct IrsOptions {
    double sweep_tol = 1e-4;   // sum_m |theta_hat_m - theta_m| per sweep
    int max_sweeps = 50;
    int phase_grid = 2048;     // initial grid on the search interval
    double golden_tol = 1e-10; // radians
};

// The single-coefficient view of the secrecy rate: with every other element
// fixed, R_sec(theta_m) = log2 det(A_R + theta_m B_R + theta_m^* B_R^H)
//                       - log2 det(A_E + theta_m B_E + theta_m^* B_E^H),
// with A Hermitian positive definite (I plus Gram terms) and B of rank <= 1.
// J = A^{-1} B carries the whole theta_m dependence after factoring out A.
struct ElementSubproblem {
    ComplexMatrix a_r, a_e;  // N_R x N_R, N_E x N_E
    ComplexMatrix b_r, b_e;
    ComplexMatrix j_r, j_e;
};

// Spectral summary of a rank <= 1 matrix J relative to the Hermitian positive
// definite A it was whitened by. When Tr(J) != 0, J is diagonalizable with a
// sole nonzero eigenvalue lambda = Tr(J); vv_product is the V_11 (V^{-1})_11
// product of V = U^H A U for the eigenbasis U, a real scalar that fixes the
// theta-independent part of the log argument.
struct Rank1Spectrum {
    bool trace_nonzero = false;
    Complex lambda{0.0, 0.0};
    double vv_product = 0.0;
};

ElementSubproblem element_subproblem(const ChannelSet& chs, const TxCovariance& q,
                                     const ReflectVector& theta, int m);

Rank1Spectrum rank1_spectrum(const ComplexMatrix& j, const ComplexMatrix& a);

// R_bar(theta_m) = R_bar_R - R_bar_E. Trace-zero sides are constant in
// theta_m: log2 det(I - A^{-1} B^H J). Diagonalizable sides follow
// log2(1 + |lambda|^2 (1 - vv) + 2 Re{theta_m lambda}).
double rbar_value(const ElementSubproblem& sub, const Rank1Spectrum& spectrum_r,
                  const Rank1Spectrum& spectrum_e, Complex theta_m);

struct PhaseInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Interval guaranteed to contain a maximizer of
// f(x) = (a + b cos x) / (c + d cos(x + omega)), a > b > 0, c > d > 0:
// [0, pi - omega] for omega in [0, pi), else [3 pi - omega, 2 pi].
PhaseInterval lemma5_interval(double omega);

// Best single coefficient and its R_bar value: closed forms when at least one
// of Tr(J_R), Tr(J_E) vanishes, otherwise an interval-restricted line search.
std::pair<Complex, double> optimal_theta_m(const ElementSubproblem& sub,
                                           const IrsOptions& opts);

struct IrsReport {
    std::vector<double> objective_trace;  // unclamped secrecy rate per sweep
    int sweeps = 0;
    bool converged = false;
};

// Cyclic per-element optimization of all reflecting coefficients for a fixed
// transmit covariance.
std::pair<ReflectVector, IrsReport> optimize_thetas(const ChannelSet& chs,
                                                    const TxCovariance& q,
                                                    const ReflectVector& theta0,
                                                    const IrsOptions& opts);

} // namespace secopt
