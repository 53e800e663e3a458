#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sedsim/field_sample.hpp"
#include "sedsim/rng.hpp"
#include "sedsim/vec3.hpp"

namespace sedsim {

enum class FieldModel { none, dipole_1d, axial_plane_wave };

// One frequency slot of the synthesized field.  Amplitude pairs are standard
// normals, one pair per term at this frequency:
//   dipole_1d:        3 terms, the Cartesian components of E(t) at the origin
//   axial_plane_wave: 4 terms, {+z, -z} directions x {x, y} polarizations
// Slot j always draws from RNG stream j, so a band change never disturbs the
// amplitudes of surviving slots.
struct Mode {
    std::uint64_t slot = 0;
    double omega = 0.0;
    double scale = 0.0;
    std::array<double, 4> amp_cos{};
    std::array<double, 4> amp_sin{};
};

struct CutoffPolicy {
    enum class Kind { fixed, moving };
    Kind kind = Kind::fixed;
    double omega_min = 0.0;  // fixed band edges, a.u.
    double omega_max = 0.0;
    double multiple = 2.5;   // moving: band top tracks multiple * orbital frequency
    double floor = 0.0;      // moving: clamp bounds; floor is also the band bottom
    double ceiling = 0.0;
};

// Frequency slots sit at mesh_origin + (slot + 1/2) * mesh_delta; the active
// band [band_lo, band_hi] selects which slots are instantiated.  mesh_delta is
// fixed at creation, so a moving cutoff preserves slot identity.
struct ModeSet {
    FieldModel model = FieldModel::none;
    RngSpec rng;
    double band_lo = 0.0;
    double band_hi = 0.0;
    double mesh_origin = 0.0;
    double mesh_delta = 0.0;
    double damp_omega = 0.0;                       // 0 disables spectral damping
    double box_lx = 0.0, box_ly = 0.0, box_lz = 0.0;  // axial geometry, a.u.
    std::vector<Mode> modes;                       // slot-ordered
};

struct FieldSpec {
    FieldModel model = FieldModel::dipole_1d;
    int mode_budget = 1024;   // slots meshed over the creation band
    double damp_omega = 0.0;
    double box_lx = 0.0, box_ly = 0.0, box_lz = 0.0;
    RngSpec rng;
};

int term_count(FieldModel model);
Vec3 term_polarization(FieldModel model, int term);
Vec3 term_k_hat(FieldModel model, int term);  // zero vector in the dipole model

// Mesh the band and draw amplitudes.  Requires band_hi > band_lo >= 0 and
// mode_budget >= 1.  Per-term scales:
//   dipole_1d:        scale^2 = (4 pi / 3) rho(omega) d_omega, giving each
//                     Cartesian component the variance of the isotropic field
//   axial_plane_wave: scale^2 = 2 alpha omega d_omega / (Lx Ly), the box
//                     normalization of one plane-wave mode carrying energy
//                     omega, rescaled for the meshed wavenumber spacing
ModeSet sample_modes(const FieldSpec& spec, double band_lo, double band_hi);

// Retarget the active band to [floor, clamp(multiple * orbital_freq, floor,
// ceiling)].  Surviving slots are copied bitwise; newly exposed slots draw
// fresh; dropped slots reappear identically if the band later re-expands.
ModeSet apply_moving_cutoff(const ModeSet& ms, double orbital_freq, const CutoffPolicy& policy);

// Direct summation at spacetime point (t, r).  The dipole model evaluates at
// k.r = 0 and carries no magnetic part; the axial model applies the spatial
// phase and accumulates B = k_hat x E per term.
FieldSample eval_field(const ModeSet& ms, double t, const Vec3& r = {});

// Field values tabulated at uniform knots over [t_start, t_end] at a fixed
// position, linearly interpolated in between.  Knot values are exact
// eval_field results.
struct FieldCache {
    double t_start = 0.0;
    double t_end = 0.0;
    double knot_dt = 0.0;
    Vec3 position;
    std::vector<FieldSample> knots;
};

FieldCache make_cache(const ModeSet& ms, double t_start, double t_end, int n_knots,
                      const Vec3& position = {});
FieldSample cache_eval(const FieldCache& cache, double t);  // throws out_of_range

// Versioned binary snapshot, bitwise round trip.
void save_modeset(const ModeSet& ms, std::ostream& out);
ModeSet load_modeset(std::istream& in);  // throws SnapshotError

}  // namespace sedsim
