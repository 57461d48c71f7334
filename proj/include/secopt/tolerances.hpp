#pragma once

namespace secopt::tol {

// Central numerical tolerance record. Everything that gates a branch or an
// error path reads from here so there is a single tuning point.
inline constexpr double hermitian_rel   = 1e-9;   // ||M - M^H||_F <= rel * ||M||_F
inline constexpr double pd_floor        = 1e-12;  // smallest admissible HPD eigenvalue
inline constexpr double evd_recon       = 1e-10;  // EVD reconstruction, relative
inline constexpr double orthonormal     = 1e-10;  // V^H V = I, entrywise
inline constexpr double unit_modulus    = 1e-12;  // | |theta| - 1 |
inline constexpr double trace_zero_rel  = 1e-10;  // |Tr J| <= rel * max(1, ||J||_F)
inline constexpr double rank1_rel       = 1e-9;   // sigma_2 <= rel * sigma_1
inline constexpr double real_residue    = 1e-9;   // imaginary part of nominally real scalars
inline constexpr double psd_eig_rel     = 1e-9;   // eig_min >= -rel * trace for PSD inputs
inline constexpr double trace_budget_rel = 1e-6;  // Tr(Q) <= P_max * (1 + rel)
inline constexpr double monotone_slack  = 1e-8;   // ascent sequences may dip by this much

} // namespace secopt::tol
