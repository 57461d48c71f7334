#include "secopt/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace secopt {

double distance(const Position& a, const Position& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void ScenarioConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ConfigError("scenario: " + msg); };
    if (n_t < 1 || n_r < 1 || n_e < 1 || m_elements < 1) fail("antenna/element counts must be >= 1");
    if (p_max_w <= 0) fail("p_max must be positive");
    if (sigma_r2_w <= 0 || sigma_e2_w <= 0) fail("noise powers must be positive");
    for (double k : {kappa_tr, kappa_te, kappa_ts, kappa_sr, kappa_se})
        if (k < 0) fail("Rician factors must be >= 0");
    for (double a : {alpha_tr, alpha_te, alpha_ts, alpha_sr, alpha_se})
        if (a <= 0) fail("path loss exponents must be positive");
    if (d0_m <= 0) fail("reference distance must be positive");
    const Position nodes[] = {ap_pos, user_pos, eave_pos, irs_pos};
    const char* names[] = {"ap", "user", "eave", "irs"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (distance(nodes[i], nodes[j]) <= 0.0)
                fail(std::string(names[i]) + " and " + names[j] + " share coordinates");
}

void ChannelSet::validate() const {
    check_finite(h_tr, "h_tr");
    check_finite(h_te, "h_te");
    check_finite(h_sr, "h_sr");
    check_finite(h_se, "h_se");
    check_finite(h_ts, "h_ts");
    const Eigen::Index nt = h_tr.cols(), nr = h_tr.rows(), ne = h_te.rows(), m = h_ts.rows();
    if (h_te.cols() != nt || h_ts.cols() != nt || h_sr.rows() != nr ||
        h_sr.cols() != m || h_se.rows() != ne || h_se.cols() != m) {
        throw ShapeMismatch("ChannelSet: inconsistent link shapes");
    }
    if (sigma_r2 <= 0 || sigma_e2 <= 0) throw ConfigError("ChannelSet: noise powers must be positive");
}

ReflectVector::ReflectVector(ComplexVector theta) : theta_(std::move(theta)) {
    if (theta_.size() < 1) throw ShapeMismatch("ReflectVector: empty");
    for (Eigen::Index i = 0; i < theta_.size(); ++i) {
        if (std::abs(std::abs(theta_[i]) - 1.0) > tol::unit_modulus) {
            throw NonUnitModulus("ReflectVector: |theta_" + std::to_string(i) + "| != 1");
        }
    }
}

ReflectVector ReflectVector::uniform_phases(int m, RngStream& rng) {
    ComplexVector t(m);
    for (int i = 0; i < m; ++i) {
        t[i] = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
    return ReflectVector(std::move(t));
}

ReflectVector ReflectVector::all_ones(int m) {
    return ReflectVector(ComplexVector::Ones(m));
}

void ReflectVector::set(int m, Complex value) {
    if (m < 0 || m >= size()) throw IndexOutOfRange("ReflectVector::set");
    if (std::abs(std::abs(value) - 1.0) > tol::unit_modulus) {
        throw NonUnitModulus("ReflectVector::set: value not unit modulus");
    }
    theta_[m] = value;
}

double path_loss_db(double d, double alpha, double beta0_db, double d0) {
    if (d <= 0 || d0 <= 0) throw NonPositiveDistance("path_loss_db: d and d0 must be positive");
    return beta0_db - 10.0 * alpha * std::log10(d / d0);
}

ComplexMatrix sample_rician(int rows, int cols, double kappa, double beta_linear,
                            const ComplexMatrix& los, RngStream& rng) {
    if (los.rows() != rows || los.cols() != cols) {
        throw ShapeMismatch("sample_rician: LoS shape mismatch");
    }
    if (beta_linear <= 0) throw ConfigError("sample_rician: beta must be positive");
    if (kappa < 0) throw ConfigError("sample_rician: kappa must be >= 0");
    ComplexMatrix h(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            h(r, c) = rng.cgauss();
        }
    }
    const double scale = std::sqrt(beta_linear / (kappa + 1.0));
    if (kappa > 0) {
        h = scale * (std::sqrt(kappa) * los + h);
    } else {
        h *= scale;
    }
    return h;
}

namespace {

// Half-wavelength ULA steering vector towards angle psi.
ComplexVector steering(int n, double psi) {
    ComplexVector a(n);
    const double s = std::sin(psi);
    for (int k = 0; k < n; ++k) {
        a[k] = std::polar(1.0, std::numbers::pi * k * s);
    }
    return a;
}

// Rank-1 LoS as the outer product of arrival/departure steering vectors; the
// "ones" model is the all-ones matrix (also unit-modulus, rank 1).
ComplexMatrix los_matrix(LosModel model, int rows, int cols,
                         const Position& tx, const Position& rx) {
    if (model == LosModel::Ones) return ComplexMatrix::Ones(rows, cols);
    const double dep = std::atan2(rx.y - tx.y, rx.x - tx.x);
    const double arr = std::atan2(tx.y - rx.y, tx.x - rx.x);
    return steering(rows, arr) * steering(cols, dep).adjoint();
}

enum LinkId : std::uint64_t { kTR = 0, kTE = 1, kTS = 2, kSR = 3, kSE = 4 };

ComplexMatrix draw_link(const ScenarioConfig& cfg, std::uint64_t realization, LinkId id,
                        int rows, int cols, const Position& tx, const Position& rx,
                        double kappa, double alpha) {
    const double d = distance(tx, rx);
    const double beta_db = path_loss_db(d, alpha, cfg.beta0_db, cfg.d0_m);
    const double beta = std::pow(10.0, beta_db / 10.0);
    RngStream rng = RngStream::derive(cfg.master_seed, {rng_realm::channel, realization, id});
    return sample_rician(rows, cols, kappa, beta,
                         los_matrix(cfg.los_model, rows, cols, tx, rx), rng);
}

} // namespace

ChannelSet scenario_channels(const ScenarioConfig& cfg, std::uint64_t realization_index) {
    cfg.validate();
    ChannelSet chs;
    chs.h_tr = draw_link(cfg, realization_index, kTR, cfg.n_r, cfg.n_t,
                         cfg.ap_pos, cfg.user_pos, cfg.kappa_tr, cfg.alpha_tr);
    chs.h_te = draw_link(cfg, realization_index, kTE, cfg.n_e, cfg.n_t,
                         cfg.ap_pos, cfg.eave_pos, cfg.kappa_te, cfg.alpha_te);
    chs.h_ts = draw_link(cfg, realization_index, kTS, cfg.m_elements, cfg.n_t,
                         cfg.ap_pos, cfg.irs_pos, cfg.kappa_ts, cfg.alpha_ts);
    chs.h_sr = draw_link(cfg, realization_index, kSR, cfg.n_r, cfg.m_elements,
                         cfg.irs_pos, cfg.user_pos, cfg.kappa_sr, cfg.alpha_sr);
    chs.h_se = draw_link(cfg, realization_index, kSE, cfg.n_e, cfg.m_elements,
                         cfg.irs_pos, cfg.eave_pos, cfg.kappa_se, cfg.alpha_se);
    chs.sigma_r2 = cfg.sigma_r2_w;
    chs.sigma_e2 = cfg.sigma_e2_w;
    chs.validate();
    return chs;
}

std::pair<ComplexMatrix, ComplexMatrix> effective_channels(const ChannelSet& chs,
                                                           const ReflectVector& theta) {
    chs.validate();
    if (theta.size() != chs.m()) {
        throw ShapeMismatch("effective_channels: theta length != M");
    }
    const auto diag = theta.theta().asDiagonal();
    ComplexMatrix g_tr = chs.h_tr + chs.h_sr * diag * chs.h_ts;
    ComplexMatrix g_te = chs.h_te + chs.h_se * diag * chs.h_ts;
    return {std::move(g_tr), std::move(g_te)};
}

} // namespace secopt
