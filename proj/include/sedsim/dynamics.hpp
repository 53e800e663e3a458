#pragma once

#include "sedsim/errors.hpp"
#include "sedsim/field_sample.hpp"
#include "sedsim/state.hpp"

namespace sedsim {

inline constexpr double kDefaultSingularityRadius = 1e-3;  // a.u.

// Equation-of-motion terms toggled per run.
struct ForceModel {
    bool coulomb = true;
    bool radiation_reaction = false;
    bool field_electric = false;
    bool field_magnetic = false;
};

struct ForceBreakdown {
    Vec3 coulomb;
    Vec3 rad_reaction;
    Vec3 lorentz;
    Vec3 total;
};

// Nuclear attraction -Z r / |r|^3.  Throws SingularityError inside r_sing.
Vec3 coulomb_force(const State& s, int Z, double r_sing = kDefaultSingularityRadius);

// Order-reduced radiation reaction: the self-force evaluated along Coulomb
// motion, -(2 Z alpha^3 / 3) [v / r^3 - 3 (r.v) r / r^5].  On a circular
// orbit its power equals the Larmor loss -(2 alpha^3 / 3) / r^4 exactly.
Vec3 rr_force_approx(const State& s, int Z, double r_sing = kDefaultSingularityRadius);

// Force on the unit-negative charge: -(E + v x B).
Vec3 lorentz_force(const Vec3& v, const FieldSample& field, bool include_magnetic);

// Active terms summed; unit mass makes force and acceleration identical.
ForceBreakdown total_accel(const State& s, int Z, const ForceModel& model,
                           const FieldSample& field,
                           double r_sing = kDefaultSingularityRadius);

}  // namespace sedsim
