#include "sedsim/dynamics.hpp"

#include <cmath>

#include "sedsim/constants.hpp"

namespace sedsim {

namespace {

double checked_radius(const State& s, double r_sing) {
    const double r = s.r.norm();
    if (r < r_sing) throw SingularityError(s, "trajectory inside the singularity radius");
    return r;
}

}  // namespace

Vec3 coulomb_force(const State& s, int Z, double r_sing) {
    const double r = checked_radius(s, r_sing);
    return s.r * (-static_cast<double>(Z) / (r * r * r));
}

Vec3 rr_force_approx(const State& s, int Z, double r_sing) {
    const double r = checked_radius(s, r_sing);
    const double a = Constants::alpha;
    const double pref = 2.0 * static_cast<double>(Z) * a * a * a / 3.0;
    const double r3 = r * r * r;
    const double rv = s.r.dot(s.v);
    return (s.v / r3 - s.r * (3.0 * rv / (r3 * r * r))) * -pref;
}

Vec3 lorentz_force(const Vec3& v, const FieldSample& field, bool include_magnetic) {
    Vec3 f = -field.E;
    if (include_magnetic) f -= v.cross(field.B);
    return f;
}

ForceBreakdown total_accel(const State& s, int Z, const ForceModel& model,
                           const FieldSample& field, double r_sing) {
    ForceBreakdown out;
    if (model.coulomb) out.coulomb = coulomb_force(s, Z, r_sing);
    if (model.radiation_reaction) out.rad_reaction = rr_force_approx(s, Z, r_sing);
    if (model.field_electric) out.lorentz = lorentz_force(s.v, field, model.field_magnetic);
    out.total = out.coulomb + out.rad_reaction + out.lorentz;
    return out;
}

}  // namespace sedsim
