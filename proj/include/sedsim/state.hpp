#pragma once

#include "sedsim/vec3.hpp"

namespace sedsim {

// Electron phase-space point in a.u.  The nucleus is fixed at the origin.
struct State {
    double t = 0.0;
    Vec3 r;
    Vec3 v;
};

}  // namespace sedsim
