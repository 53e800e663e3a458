#include "sedsim/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sedsim {

namespace {

struct Panel {
    double a, b;
    double fa, fm, fb;
    double simpson;
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double fa,
                 double fb) {
    Panel p;
    p.a = a;
    p.b = b;
    p.fa = fa;
    p.fb = fb;
    p.fm = f(0.5 * (a + b));
    p.simpson = (b - a) / 6.0 * (fa + 4.0 * p.fm + fb);
    return p;
}

// Recursive refinement with the standard |S2 - S1| / 15 error estimate.
double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth) {
    const double m = 0.5 * (p.a + p.b);
    const Panel left = make_panel(f, p.a, m, p.fa, p.fm);
    const Panel right = make_panel(f, m, p.b, p.fm, p.fb);
    const double s2 = left.simpson + right.simpson;
    const double err = (s2 - p.simpson) / 15.0;
    if (depth <= 0 || std::fabs(err) <= tol) return s2 + err;
    return refine(f, left, 0.5 * tol, depth - 1) + refine(f, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 double abs_tol, int initial_panels) {
    if (!(b >= a)) throw std::invalid_argument("integrate: b < a");
    if (initial_panels < 1) throw std::invalid_argument("integrate: initial_panels < 1");
    if (a == b) return 0.0;

    const double h = (b - a) / initial_panels;
    double coarse = 0.0;
    std::vector<Panel> panels;
    panels.reserve(initial_panels);
    double fa = f(a);
    for (int i = 0; i < initial_panels; ++i) {
        const double x1 = (i + 1 == initial_panels) ? b : a + (i + 1) * h;
        const double fb = f(x1);
        panels.push_back(make_panel(f, a + i * h, x1, fa, fb));
        coarse += panels.back().simpson;
        fa = fb;
    }

    const double tol = std::max(abs_tol, rel_tol * std::fabs(coarse));
    const double panel_tol = std::max(tol / initial_panels, 1e-300);
    double total = 0.0;
    for (const Panel& p : panels) total += refine(f, p, panel_tol, 48);
    return total;
}

}  // namespace sedsim
