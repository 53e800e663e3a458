#pragma once

#include "sedsim/state.hpp"

namespace sedsim {

// Osculating two-body elements of a state in the potential -Z/r.
// Always defined: energy, angular_momentum, ecc_vector, eccentricity,
// semi_latus.  The remaining fields require a bound state (energy < 0) and
// hold quiet NaN otherwise.
struct OrbitElements {
    double energy = 0.0;
    Vec3 angular_momentum;
    Vec3 ecc_vector;       // points at perihelion, magnitude = eccentricity
    Vec3 runge_lenz;       // (Z / a_eff) * ecc_vector; bound states only
    double eccentricity = 0.0;
    double semi_latus = 0.0;  // p = L^2 / Z
    bool bound = false;
    double a_eff = 0.0;         // sqrt(-2 E)
    double semi_major = 0.0;    // r_c = Z / (2 |E|)
    double nu = 0.0;            // angle with sin(nu) = eccentricity
    double orbital_omega = 0.0; // sqrt(Z) / r_c^(3/2)
};

OrbitElements elements_from_state(const State& s, int Z);

// Conic radius at true anomaly phi: semi_latus / (1 + ecc cos phi).
// Rejects directions where the conic is open (denominator <= 0).
double orbit_radius(const OrbitElements& el, double phi);

// Exact bound two-body advance by dt: solves Kepler's equation with a
// safeguarded Newton iteration run to floating-point convergence.
// Requires a bound state with nonzero angular momentum.
State kepler_propagate(const State& s, int Z, double dt);

}  // namespace sedsim
