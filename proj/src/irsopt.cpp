#include "secopt/irsopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace secopt {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_2pi(double x) {
    double y = std::fmod(x, two_pi);
    if (y < 0) y += two_pi;
    return y;
}

struct SideMatrices {
    ComplexMatrix a;
    ComplexMatrix b;
};

// A = I + (1/s2)(Hhat Hhat^H + Htil Htil^H), B = (1/s2) Htil Hhat^H for one
// receiver side, where Hhat aggregates the direct link plus all elements
// i != m and Htil is element m's rank-1 contribution.
SideMatrices side_matrices(const ComplexMatrix& h_bar_rx, const ComplexMatrix& h_s,
                           const ComplexMatrix& h_bar_ts, const ComplexVector& theta,
                           int m, double s2) {
    const Eigen::Index n_rx = h_bar_rx.rows();
    ComplexMatrix h_hat = h_bar_rx;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        if (i == m) continue;
        h_hat.noalias() += theta[i] * h_s.col(i) * h_bar_ts.row(i);
    }
    ComplexMatrix h_til = h_s.col(m) * h_bar_ts.row(m);

    SideMatrices out;
    out.a = ComplexMatrix::Identity(n_rx, n_rx) +
            (h_hat * h_hat.adjoint() + h_til * h_til.adjoint()) / s2;
    out.a = 0.5 * (out.a + out.a.adjoint()).eval();
    out.b = h_til * h_hat.adjoint() / s2;
    return out;
}

} // namespace

ElementSubproblem element_subproblem(const ChannelSet& chs, const TxCovariance& q,
                                     const ReflectVector& theta, int m) {
    chs.validate();
    if (m < 0 || m >= chs.m()) throw IndexOutOfRange("element_subproblem: m");
    if (theta.size() != chs.m()) throw ShapeMismatch("element_subproblem: theta length");
    q.check_psd("element_subproblem: Q");

    // Q = U S U^H, propagate the square-root factor U S^{1/2} into the links.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(q.q);
    if (es.info() != Eigen::Success) throw NumericalFailure("element_subproblem: EVD failed");
    ComplexMatrix sqrt_factor =
        es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

    ComplexMatrix h_bar_tr = chs.h_tr * sqrt_factor;
    ComplexMatrix h_bar_te = chs.h_te * sqrt_factor;
    ComplexMatrix h_bar_ts = chs.h_ts * sqrt_factor;

    SideMatrices r = side_matrices(h_bar_tr, chs.h_sr, h_bar_ts, theta.theta(), m, chs.sigma_r2);
    SideMatrices e = side_matrices(h_bar_te, chs.h_se, h_bar_ts, theta.theta(), m, chs.sigma_e2);

    ElementSubproblem sub;
    sub.j_r = r.a.llt().solve(r.b);
    sub.j_e = e.a.llt().solve(e.b);
    sub.a_r = std::move(r.a);
    sub.b_r = std::move(r.b);
    sub.a_e = std::move(e.a);
    sub.b_e = std::move(e.b);
    return sub;
}

Rank1Spectrum rank1_spectrum(const ComplexMatrix& j, const ComplexMatrix& a) {
    check_finite(a, "rank1_spectrum: A");
    if (j.rows() != j.cols() || j.rows() != a.rows()) {
        throw ShapeMismatch("rank1_spectrum: shapes disagree");
    }
    Rank1Spectrum spectrum;
    Eigen::JacobiSVD<ComplexMatrix> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s.size() > 1 && s[1] > tol::rank1_rel * s[0]) {
        throw RankTooHigh("rank1_spectrum: second singular value too large");
    }

    const double norm_j = j.norm();
    const Complex trace_j = j.trace();
    if (std::abs(trace_j) <= tol::trace_zero_rel * std::max(1.0, norm_j)) {
        return spectrum;  // rank 0 or nilpotent: constant in theta_m
    }

    spectrum.trace_nonzero = true;
    spectrum.lambda = trace_j;

    // Eigenbasis U = [u | complement(v)] for J = sigma u v^H: u carries the
    // sole nonzero eigenvalue Tr(J), the complement of v spans the null space.
    const Eigen::Index n = j.rows();
    if (n == 1) {
        spectrum.vv_product = 1.0;
        return spectrum;
    }
    ComplexMatrix u_basis(n, n);
    u_basis.col(0) = svd.matrixU().col(0);
    u_basis.rightCols(n - 1) = complement_basis(svd.matrixV().col(0));

    ComplexMatrix v = u_basis.adjoint() * a * u_basis;
    ComplexMatrix v_inv = v.partialPivLu().inverse();
    const Complex v11 = v(0, 0);
    const Complex vinv11 = v_inv(0, 0);
    if (std::abs(v11.imag()) > tol::real_residue * std::max(1.0, std::abs(v11)) ||
        std::abs(vinv11.imag()) > tol::real_residue * std::max(1.0, std::abs(vinv11))) {
        throw NumericalFailure("rank1_spectrum: vv_product not real");
    }
    spectrum.vv_product = v11.real() * vinv11.real();
    return spectrum;
}

namespace {

double side_value(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& j,
                  const Rank1Spectrum& spectrum, Complex theta_m) {
    if (!spectrum.trace_nonzero) {
        const Eigen::Index n = a.rows();
        ComplexMatrix m = ComplexMatrix::Identity(n, n) - a.llt().solve(b.adjoint() * j);
        const Complex det = m.partialPivLu().determinant();
        if (std::abs(det.imag()) > tol::real_residue * std::max(1.0, std::abs(det))) {
            throw NumericalFailure("rbar_value: determinant not real");
        }
        if (det.real() <= 0.0) throw LogDomain("rbar_value: nonpositive determinant");
        return std::log2(det.real());
    }
    const double mag2 = std::norm(spectrum.lambda);
    const double arg = 1.0 + mag2 * (1.0 - spectrum.vv_product) +
                       2.0 * (theta_m * spectrum.lambda).real();
    if (arg <= 0.0) throw LogDomain("rbar_value: nonpositive log argument");
    return std::log2(arg);
}

} // namespace

double rbar_value(const ElementSubproblem& sub, const Rank1Spectrum& spectrum_r,
                  const Rank1Spectrum& spectrum_e, Complex theta_m) {
    if (std::abs(std::abs(theta_m) - 1.0) > tol::unit_modulus) {
        throw NonUnitModulus("rbar_value: theta_m not unit modulus");
    }
    return side_value(sub.a_r, sub.b_r, sub.j_r, spectrum_r, theta_m) -
           side_value(sub.a_e, sub.b_e, sub.j_e, spectrum_e, theta_m);
}

PhaseInterval lemma5_interval(double omega) {
    if (omega < 0.0 || omega >= two_pi) throw OutOfRange("lemma5_interval: omega");
    if (omega < std::numbers::pi) {
        return {0.0, std::numbers::pi - omega};
    }
    return {3.0 * std::numbers::pi - omega, two_pi};
}

namespace {

// f(x) = (a_r + b_r cos x) / (a_e + b_e cos(x + omega)); maximizing it
// maximizes the both-nonzero R_bar.
struct PhaseRatio {
    double a_r, b_r, a_e, b_e, omega;
    double operator()(double x) const {
        return (a_r + b_r * std::cos(x)) / (a_e + b_e * std::cos(x + omega));
    }
};

double golden_section_max(const PhaseRatio& f, double lo, double hi, double tol_rad) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol_rad) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

std::pair<Complex, double> optimal_theta_m(const ElementSubproblem& sub,
                                           const IrsOptions& opts) {
    const Rank1Spectrum spectrum_r = rank1_spectrum(sub.j_r, sub.a_r);
    const Rank1Spectrum spectrum_e = rank1_spectrum(sub.j_e, sub.a_e);

    Complex theta_hat;
    if (!spectrum_r.trace_nonzero && !spectrum_e.trace_nonzero) {
        theta_hat = Complex(1.0, 0.0);  // value independent of theta_m
    } else if (spectrum_r.trace_nonzero && !spectrum_e.trace_nonzero) {
        theta_hat = std::polar(1.0, -std::arg(spectrum_r.lambda));
    } else if (!spectrum_r.trace_nonzero && spectrum_e.trace_nonzero) {
        theta_hat = std::polar(1.0, std::numbers::pi - std::arg(spectrum_e.lambda));
    } else {
        // Both diagonalizable: line search of the cosine ratio over the
        // interval that provably contains a maximizer.
        PhaseRatio f;
        f.a_r = 1.0 + std::norm(spectrum_r.lambda) * (1.0 - spectrum_r.vv_product);
        f.b_r = 2.0 * std::abs(spectrum_r.lambda);
        f.a_e = 1.0 + std::norm(spectrum_e.lambda) * (1.0 - spectrum_e.vv_product);
        f.b_e = 2.0 * std::abs(spectrum_e.lambda);
        // The log arguments stay positive for every unit theta_m exactly when
        // alpha > beta > 0 on both sides; surface any numerical violation
        // instead of clamping it away.
        if (!(f.a_r > f.b_r && f.b_r > 0.0) || !(f.a_e > f.b_e && f.b_e > 0.0)) {
            throw LogDomain("optimal_theta_m: cosine ratio coefficients not positive");
        }

        const double phi_r = wrap_2pi(std::arg(spectrum_r.lambda));
        const double phi_e = wrap_2pi(std::arg(spectrum_e.lambda));
        f.omega = wrap_2pi(phi_e - phi_r);

        const PhaseInterval iv = lemma5_interval(f.omega);
        const int grid = std::max(2, opts.phase_grid);
        double best_x = iv.lo;
        double best_f = f(iv.lo);
        const double step = (iv.hi - iv.lo) / (grid - 1);
        for (int i = 1; i < grid; ++i) {
            const double x = iv.lo + i * step;
            const double fx = f(x);
            if (fx > best_f) { best_f = fx; best_x = x; }
        }
        const double lo = std::max(iv.lo, best_x - step);
        const double hi = std::min(iv.hi, best_x + step);
        double x_star = golden_section_max(f, lo, hi, opts.golden_tol);
        if (f(x_star) < best_f) x_star = best_x;
        theta_hat = std::polar(1.0, x_star - phi_r);
    }
    return {theta_hat, rbar_value(sub, spectrum_r, spectrum_e, theta_hat)};
}

std::pair<ReflectVector, IrsReport> optimize_thetas(const ChannelSet& chs,
                                                    const TxCovariance& q,
                                                    const ReflectVector& theta0,
                                                    const IrsOptions& opts) {
    ReflectVector theta = theta0;
    IrsReport report;
    report.objective_trace.push_back(secrecy_rate(chs, theta, q, false));

    for (int sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        double movement = 0.0;
        for (int m = 0; m < chs.m(); ++m) {
            ElementSubproblem sub = element_subproblem(chs, q, theta, m);
            const Rank1Spectrum spectrum_r = rank1_spectrum(sub.j_r, sub.a_r);
            const Rank1Spectrum spectrum_e = rank1_spectrum(sub.j_e, sub.a_e);
            auto [theta_hat, value] = optimal_theta_m(sub, opts);
            // The incumbent is always a feasible candidate; never move to a
            // coefficient that is not a strict improvement. Ties keep theta_m
            // (the constant-value branch leaves the coefficient untouched).
            const double incumbent = rbar_value(sub, spectrum_r, spectrum_e, theta[m]);
            if (value <= incumbent) continue;
            movement += std::abs(theta_hat - theta[m]);
            theta.set(m, theta_hat);
        }
        report.sweeps = sweep;
        report.objective_trace.push_back(secrecy_rate(chs, theta, q, false));
        if (movement <= opts.sweep_tol) {
            report.converged = true;
            break;
        }
    }
    return {std::move(theta), std::move(report)};
}

} // namespace secopt
