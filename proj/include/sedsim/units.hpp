#pragma once

#include "sedsim/constants.hpp"

namespace sedsim {

enum class Dimension { length, time, energy };

// Atomic-unit value to SI and back.
double to_si(double value, Dimension dim);
double from_si(double value, Dimension dim);

// Charge-scaled reporting units for a hydrogen-like ion of charge Z:
// energies in Z^2 Hartree, lengths in Bohr radii of the ion (a0/Z), times in
// t0 = 1/Z^2 a.u.  A ground-scale circular orbit then reports r = 1, E = -1/2
// for every Z.
double scaled_report(double value_au, int Z, Dimension dim);

// Inverse of scaled_report: reported value back to raw a.u.
double scaled_to_au(double value_scaled, int Z, Dimension dim);

// t0 in a.u. for charge Z.
double bohr_time(int Z);

}  // namespace sedsim
