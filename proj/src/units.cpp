#include "sedsim/units.hpp"

#include <stdexcept>

namespace sedsim {

namespace {

double si_scale(Dimension dim) {
    switch (dim) {
        case Dimension::length: return Constants::au_length_si;
        case Dimension::time: return Constants::au_time_si;
        case Dimension::energy: return Constants::au_energy_si;
    }
    throw std::invalid_argument("unknown dimension");
}

void check_charge(int Z) {
    if (Z < 1) throw std::invalid_argument("charge number must be >= 1");
}

}  // namespace

double to_si(double value, Dimension dim) { return value * si_scale(dim); }

double from_si(double value, Dimension dim) { return value / si_scale(dim); }

double bohr_time(int Z) {
    check_charge(Z);
    return 1.0 / (static_cast<double>(Z) * Z);
}

double scaled_report(double value_au, int Z, Dimension dim) {
    check_charge(Z);
    const double z = static_cast<double>(Z);
    switch (dim) {
        case Dimension::energy: return value_au / (z * z);
        case Dimension::length: return value_au * z;
        case Dimension::time: return value_au * z * z;
    }
    throw std::invalid_argument("unknown dimension");
}

double scaled_to_au(double value_scaled, int Z, Dimension dim) {
    check_charge(Z);
    const double z = static_cast<double>(Z);
    switch (dim) {
        case Dimension::energy: return value_scaled * z * z;
        case Dimension::length: return value_scaled / z;
        case Dimension::time: return value_scaled / (z * z);
    }
    throw std::invalid_argument("unknown dimension");
}

}  // namespace sedsim
