#include "sedsim/spectrum.hpp"

#include <cmath>
#include <stdexcept>

#include "sedsim/constants.hpp"
#include "sedsim/quadrature.hpp"

namespace sedsim {

namespace {

void check_band(double lo, double hi) {
    if (lo < 0.0 || hi < lo) throw std::invalid_argument("invalid frequency band");
}

}  // namespace

double spectral_density(double omega) {
    if (omega < 0.0) throw std::invalid_argument("spectral_density: omega < 0");
    const double a = Constants::alpha;
    return a * a * a * omega * omega * omega / (2.0 * kPi * kPi);
}

double analytic_band_energy(double omega_lo, double omega_hi) {
    check_band(omega_lo, omega_hi);
    const double a = Constants::alpha;
    const double lo2 = omega_lo * omega_lo;
    const double hi2 = omega_hi * omega_hi;
    return a * a * a * (hi2 * hi2 - lo2 * lo2) / (8.0 * kPi * kPi);
}

double autocorrelation_oracle(double omega_lo, double omega_hi, double tau) {
    check_band(omega_lo, omega_hi);
    if (omega_lo == omega_hi) return 0.0;
    // Panel count tracks the oscillation count so the first Simpson pass
    // already resolves the integrand.
    const double cycles = std::fabs(tau) * (omega_hi - omega_lo) / kTwoPi;
    const int panels = std::min(16384, std::max(16, 8 * static_cast<int>(cycles + 1.0)));
    const double raw = integrate(
        [tau](double w) { return spectral_density(w) * std::cos(w * tau); }, omega_lo, omega_hi,
        1e-9, 1e-300, panels);
    return kVariancePrefactor * raw;
}

}  // namespace sedsim
