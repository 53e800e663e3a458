#pragma once

#include <algorithm>
#include <cmath>

#include "sedsim/errors.hpp"
#include "sedsim/state.hpp"

namespace sedsim {

// One classical RK4 step of r' = v, v' = accel(t, r, v).
template <typename AccelFn>
State rk4_step(const State& s, double dt, AccelFn&& accel) {
    const Vec3 k1r = s.v;
    const Vec3 k1v = accel(s.t, s.r, s.v);

    const Vec3 k2r = s.v + k1v * (0.5 * dt);
    const Vec3 k2v = accel(s.t + 0.5 * dt, s.r + k1r * (0.5 * dt), s.v + k1v * (0.5 * dt));

    const Vec3 k3r = s.v + k2v * (0.5 * dt);
    const Vec3 k3v = accel(s.t + 0.5 * dt, s.r + k2r * (0.5 * dt), s.v + k2v * (0.5 * dt));

    const Vec3 k4r = s.v + k3v * dt;
    const Vec3 k4v = accel(s.t + dt, s.r + k3r * dt, s.v + k3v * dt);

    State out;
    out.t = s.t + dt;
    out.r = s.r + (k1r + (k2r + k3r) * 2.0 + k4r) * (dt / 6.0);
    out.v = s.v + (k1v + (k2v + k3v) * 2.0 + k4v) * (dt / 6.0);
    return out;
}

struct AdaptiveResult {
    State state;
    double dt_used = 0.0;
    double dt_next = 0.0;
    int rejections = 0;
};

// Step-doubling RK4: one full step against two half steps.  Accepts when the
// doubling estimate satisfies err <= tol * (1 + |r|), returns the
// Richardson-extrapolated state, and proposes dt_next by the 1/5-power rule
// (safety 0.9, growth clamped to [0.2, 5]).  Throws StiffnessError once the
// attempted step falls below dt_min.
template <typename AccelFn>
AdaptiveResult adaptive_step(const State& s, double dt_try, double tol, AccelFn&& accel,
                             double dt_min = 1e-14) {
    AdaptiveResult res;
    double h = dt_try;
    const double scale = tol * (1.0 + s.r.norm());
    while (true) {
        if (h < dt_min) throw StiffnessError(s, "adaptive step size underflowed dt_min");
        const State full = rk4_step(s, h, accel);
        const State mid = rk4_step(s, 0.5 * h, accel);
        const State half2 = rk4_step(mid, 0.5 * h, accel);

        const double err =
            std::max((half2.r - full.r).max_abs(), (half2.v - full.v).max_abs());
        double factor = 5.0;
        if (err > 0.0) factor = 0.9 * std::pow(scale / err, 0.2);
        factor = std::clamp(factor, 0.2, 5.0);

        if (err <= scale) {
            res.state.t = s.t + h;
            res.state.r = half2.r + (half2.r - full.r) / 15.0;
            res.state.v = half2.v + (half2.v - full.v) / 15.0;
            res.dt_used = h;
            res.dt_next = h * factor;
            return res;
        }
        ++res.rejections;
        h *= factor;
    }
}

}  // namespace sedsim
