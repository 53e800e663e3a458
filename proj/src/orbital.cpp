#include "sedsim/orbital.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sedsim/constants.hpp"

namespace sedsim {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void check_charge(int Z) {
    if (Z < 1) throw std::invalid_argument("charge number must be >= 1");
}

// Solve M = E - ecc sin(E) for E.  Newton with a bisection safeguard on
// [M - ecc, M + ecc]; f' = 1 - ecc cos(E) >= 1 - ecc > 0 keeps it monotone.
// Runs to full floating-point convergence: a residual tolerance on f alone
// leaves an anomaly error of f / (1 - ecc) that accumulates over repeated
// propagation of eccentric orbits.
double solve_kepler(double mean_anomaly, double ecc) {
    double lo = mean_anomaly - ecc;
    double hi = mean_anomaly + ecc;
    double e_anom = mean_anomaly + ecc * std::sin(mean_anomaly);
    for (int it = 0; it < 100; ++it) {
        const double f = e_anom - ecc * std::sin(e_anom) - mean_anomaly;
        if (f == 0.0) return e_anom;
        if (f > 0.0) {
            hi = e_anom;
        } else {
            lo = e_anom;
        }
        const double fp = 1.0 - ecc * std::cos(e_anom);
        const double step = f / fp;
        if (std::fabs(step) < 1e-16 * (1.0 + std::fabs(e_anom))) return e_anom;
        double next = e_anom - step;
        if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
        e_anom = next;
    }
    return e_anom;  // alternating at the last ulp; either iterate is fine
}

}  // namespace

OrbitElements elements_from_state(const State& s, int Z) {
    check_charge(Z);
    const double r = s.r.norm();
    if (r < 1e-12) throw std::invalid_argument("elements_from_state: state at origin");
    const double z = static_cast<double>(Z);

    OrbitElements el;
    el.energy = 0.5 * s.v.norm2() - z / r;
    el.angular_momentum = s.r.cross(s.v);
    el.ecc_vector = s.v.cross(el.angular_momentum) / z - s.r / r;
    el.eccentricity = el.ecc_vector.norm();
    el.semi_latus = el.angular_momentum.norm2() / z;
    el.bound = el.energy < 0.0;

    if (el.bound) {
        el.a_eff = std::sqrt(-2.0 * el.energy);
        el.semi_major = z / (2.0 * -el.energy);
        el.runge_lenz = el.ecc_vector * (z / el.a_eff);
        el.nu = std::asin(std::min(1.0, el.eccentricity));
        el.orbital_omega = std::sqrt(z) / (el.semi_major * std::sqrt(el.semi_major));
    } else {
        el.a_eff = kNan;
        el.semi_major = kNan;
        el.runge_lenz = {kNan, kNan, kNan};
        el.nu = kNan;
        el.orbital_omega = kNan;
    }
    return el;
}

double orbit_radius(const OrbitElements& el, double phi) {
    const double denom = 1.0 + el.eccentricity * std::cos(phi);
    if (denom <= 0.0) throw std::domain_error("orbit_radius: open direction of the conic");
    return el.semi_latus / denom;
}

State kepler_propagate(const State& s, int Z, double dt) {
    check_charge(Z);
    const OrbitElements el = elements_from_state(s, Z);
    if (!el.bound) throw std::domain_error("kepler_propagate: state is unbound");
    const double l_mag = el.angular_momentum.norm();
    if (l_mag < 1e-12) throw std::domain_error("kepler_propagate: degenerate radial orbit");

    const double rc = el.semi_major;
    const double ecc = el.eccentricity;
    const Vec3 h_hat = el.angular_momentum / l_mag;

    // Perihelion frame; a circular orbit has no perihelion, so anchor the
    // frame at the current position instead.
    Vec3 p_hat;
    if (ecc > 1e-12) {
        p_hat = el.ecc_vector / ecc;
    } else {
        p_hat = s.r.unit();
    }
    const Vec3 q_hat = h_hat.cross(p_hat);

    const double b_over_a = std::sqrt(std::max(0.0, 1.0 - ecc * ecc));
    const double x = s.r.dot(p_hat);
    const double y = s.r.dot(q_hat);
    const double e0 = std::atan2(y / (rc * b_over_a), x / rc + ecc);
    const double m0 = e0 - ecc * std::sin(e0);

    const double mean_motion = std::sqrt(static_cast<double>(Z) / (rc * rc * rc));
    double mean = m0 + mean_motion * dt;
    mean = std::remainder(mean, kTwoPi);

    const double e1 = solve_kepler(mean, ecc);
    const double ce = std::cos(e1);
    const double se = std::sin(e1);
    const double radius = rc * (1.0 - ecc * ce);

    State out;
    out.t = s.t + dt;
    out.r = p_hat * (rc * (ce - ecc)) + q_hat * (rc * b_over_a * se);
    const double vscale = std::sqrt(static_cast<double>(Z) * rc) / radius;
    out.v = p_hat * (-vscale * se) + q_hat * (vscale * b_over_a * ce);
    return out;
}

}  // namespace sedsim
