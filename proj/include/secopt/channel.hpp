#pragma once

#include <cstdint>
#include <utility>

#include "secopt/numerics.hpp"
#include "secopt/rng.hpp"

namespace secopt {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);

enum class LosModel { Steering, Ones };

// Scenario geometry and fading parameters. Powers are linear watts; dB/dBm
// conversions happen once at config load.
struct ScenarioConfig {
    int n_t = 4;
    int n_r = 4;
    int n_e = 4;
    int m_elements = 20;

    Position ap_pos{0.0, 0.0};
    Position user_pos{45.0, 0.0};
    Position eave_pos{55.0, 0.0};
    Position irs_pos{50.0, 5.0};

    double p_max_w = 1.0;        // 30 dBm
    double sigma_r2_w = 1e-7;    // -40 dBm
    double sigma_e2_w = 1e-7;

    double kappa_tr = 0.0;
    double kappa_te = 0.0;
    double kappa_ts = 0.0;
    double kappa_sr = 1.0;
    double kappa_se = 1.0;

    double alpha_tr = 2.0;
    double alpha_te = 2.0;
    double alpha_ts = 2.0;
    double alpha_sr = 2.0;
    double alpha_se = 2.0;

    double beta0_db = -30.0;
    double d0_m = 1.0;

    LosModel los_model = LosModel::Steering;
    std::uint64_t master_seed = 1;

    void validate() const;  // throws ConfigError
};

// The five channel matrices of one realization plus the noise powers.
struct ChannelSet {
    ComplexMatrix h_tr;  // N_R x N_T
    ComplexMatrix h_te;  // N_E x N_T
    ComplexMatrix h_sr;  // N_R x M
    ComplexMatrix h_se;  // N_E x M
    ComplexMatrix h_ts;  // M x N_T
    double sigma_r2 = 0.0;
    double sigma_e2 = 0.0;

    int n_t() const { return static_cast<int>(h_tr.cols()); }
    int n_r() const { return static_cast<int>(h_tr.rows()); }
    int n_e() const { return static_cast<int>(h_te.rows()); }
    int m() const { return static_cast<int>(h_ts.rows()); }

    void validate() const;  // shape relations + finiteness
};

// Unit-modulus reflecting coefficients theta, one per IRS element.
class ReflectVector {
public:
    explicit ReflectVector(ComplexVector theta);

    static ReflectVector uniform_phases(int m, RngStream& rng);
    static ReflectVector all_ones(int m);

    const ComplexVector& theta() const { return theta_; }
    int size() const { return static_cast<int>(theta_.size()); }
    Complex operator[](int m) const { return theta_[m]; }

    // Replaces one coefficient; value must be unit modulus.
    void set(int m, Complex value);

private:
    ComplexVector theta_;
};

// beta0 - 10 * alpha * log10(d / d0), in dB.
double path_loss_db(double d, double alpha, double beta0_db, double d0);

// sqrt(beta/(kappa+1)) * (sqrt(kappa) * los + nlos) with i.i.d. CN(0,1) nlos
// entries drawn row-major from rng.
ComplexMatrix sample_rician(int rows, int cols, double kappa, double beta_linear,
                            const ComplexMatrix& los, RngStream& rng);

// One deterministic channel realization. Per-link sub-streams depend only on
// (master_seed, realization_index, link id), so e.g. the direct links do not
// change when the IRS element count does.
ChannelSet scenario_channels(const ScenarioConfig& cfg, std::uint64_t realization_index);

// G_TR = H_TR + H_SR diag(theta) H_TS and the eavesdropper analogue.
std::pair<ComplexMatrix, ComplexMatrix> effective_channels(const ChannelSet& chs,
                                                           const ReflectVector& theta);

} // namespace secopt
