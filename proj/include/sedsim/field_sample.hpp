#pragma once

#include "sedsim/vec3.hpp"

namespace sedsim {

// Instantaneous electric and magnetic field at one spacetime point, a.u.
struct FieldSample {
    Vec3 E;
    Vec3 B;
};

}  // namespace sedsim
