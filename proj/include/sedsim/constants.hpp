#pragma once

namespace sedsim {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Atomic units throughout: hbar = m_e = e = 1 and c = 1/alpha.
// SI scales are CODATA 2018.
struct Constants {
    static constexpr double alpha = 7.2973525693e-3;         // fine-structure constant
    static constexpr double c_au = 1.0 / alpha;              // speed of light, a.u.
    static constexpr double au_length_si = 5.29177210903e-11;   // m (Bohr radius)
    static constexpr double au_time_si = 2.4188843265857e-17;   // s
    static constexpr double au_energy_si = 4.3597447222071e-18; // J (Hartree)
};

}  // namespace sedsim
