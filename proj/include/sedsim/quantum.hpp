#pragma once

namespace sedsim {

// Hydrogen-like ground-state radial probability density
// P(r) = 4 Z^3 r^2 exp(-2 Z r), normalized on [0, inf).  Peaks at r = 1/Z.
double ground_state_radial_density(double r, int Z);

// Closed-form CDF of the density above:
// F(r) = 1 - exp(-2 Z r) (1 + 2 Z r + 2 Z^2 r^2).
double radial_cdf(double r, int Z);

// Bound-level energy E_n = -Z^2 / (2 n^2) in a.u.
double energy_level(int n, int Z);

// Number of degenerate states at level n (spin excluded): n^2.
int degeneracy(int n);

}  // namespace sedsim
