#pragma once

#include "sedsim/constants.hpp"

namespace sedsim {

// Per-component variance of the synthesized electric field is
// kVariancePrefactor * integral of spectral_density over the band.
inline constexpr double kVariancePrefactor = 4.0 * kPi / 3.0;

// Zero-point spectral energy density rho(omega) = alpha^3 omega^3 / (2 pi^2)
// in a.u.  Rejects omega < 0.
double spectral_density(double omega);

// Closed form of the band integral of rho: alpha^3 (hi^4 - lo^4) / (8 pi^2).
double analytic_band_energy(double omega_lo, double omega_hi);

// Stationary two-time autocorrelation of one field component:
// kVariancePrefactor * integral rho(omega) cos(omega tau) d omega, by
// adaptive quadrature to 1e-9 relative.
double autocorrelation_oracle(double omega_lo, double omega_hi, double tau);

}  // namespace sedsim
