#pragma once

#include <functional>

namespace sedsim {

// Adaptive Simpson integral of f over [a, b].  Converges to
// max(rel_tol * |I|, abs_tol); initial_panels guards against cancellation
// fooling the top-level error estimate on oscillatory integrands.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-12, double abs_tol = 0.0, int initial_panels = 8);

}  // namespace sedsim
