#include "sedsim/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace sedsim {

namespace {

void check_args(double r, int Z) {
    if (Z < 1) throw std::invalid_argument("charge number must be >= 1");
    if (r < 0.0) throw std::invalid_argument("radius must be >= 0");
}

}  // namespace

double ground_state_radial_density(double r, int Z) {
    check_args(r, Z);
    const double z = static_cast<double>(Z);
    return 4.0 * z * z * z * r * r * std::exp(-2.0 * z * r);
}

double radial_cdf(double r, int Z) {
    check_args(r, Z);
    const double x = 2.0 * static_cast<double>(Z) * r;
    return 1.0 - std::exp(-x) * (1.0 + x + 0.5 * x * x);
}

double energy_level(int n, int Z) {
    if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
    if (Z < 1) throw std::invalid_argument("charge number must be >= 1");
    const double z = static_cast<double>(Z);
    return -z * z / (2.0 * static_cast<double>(n) * n);
}

int degeneracy(int n) {
    if (n < 1) throw std::invalid_argument("principal quantum number must be >= 1");
    return n * n;
}

}  // namespace sedsim
