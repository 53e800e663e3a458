#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sedsim/dynamics.hpp"
#include "sedsim/field.hpp"
#include "sedsim/state.hpp"

namespace sedsim {

enum class IntegratorKind { fixed_rk4, adaptive_rk4 };

struct InitialSpec {
    enum class Kind { circular, circular_scaled, explicit_state };
    Kind kind = Kind::circular;
    double r0 = 1.0;  // circular radius, a.u. or scaled Bohr radii
    State state;      // explicit_state
};

// Lengths in the [field] section keep their natural input units (Angstrom,
// cm); conversion to a.u. happens in field_spec().
struct FieldConfig {
    int modes = 1024;
    double damp_omega = 0.0;  // a.u.; 0 = off
    double box_lx_A = 27.0;
    double box_ly_A = 27.0;
    double box_lz_cm = 0.41;
    double lambda_min_A = 0.1;
    double lambda_max_A = 900.0;
};

// Detector thresholds in charge-scaled reporting units.
struct DetectorConfig {
    double ionization_threshold = -0.05;
    double ionization_dwell_t0 = 1e4;  // full-scale runs use 1e7
    double collapse_r_min = 0.05;
    double critical_L = 0.588;
    double energy_band_min = -0.1;
    bool exclude_ionization_tail = true;
};

struct OutputConfig {
    int trace_stride = 1;
    int hist_bins = 200;
    double hist_r_max = 10.0;  // scaled Bohr radii
    double hist_l_max = 2.0;
};

struct SimConfig {
    int Z = 1;
    std::uint64_t seed = 0;
    ForceModel forces;
    FieldModel field_model = FieldModel::none;
    IntegratorKind integrator = IntegratorKind::fixed_rk4;
    int steps_per_orbit = 4000;
    int field_updates_per_orbit = 10;
    double t_max_t0 = 0.0;     // exactly one of t_max_t0 / t_max_orbits is set
    double t_max_orbits = 0.0;
    double dt_init_t0 = 0.0;   // 0 = derive from steps_per_orbit
    double adaptive_tol = 1e-10;
    double dt_min = 1e-14;     // a.u.
    double singularity_radius = kDefaultSingularityRadius;
    InitialSpec initial;
    CutoffPolicy cutoff;
    FieldConfig field;
    DetectorConfig detectors;
    OutputConfig output;
};

struct ConfigKeyDoc {
    std::string section;
    std::string key;
    std::string doc;
};

// Line-oriented "key = value" file with [section] headers and #/; comments.
// Unknown sections or keys fail with the offending line number.
SimConfig parse_config_text(const std::string& text, const std::string& source_name);
SimConfig parse_config_file(const std::string& path);

// Override in "section.key=value" form (bare keys allowed when unambiguous).
void apply_override(SimConfig& cfg, const std::string& assignment);

// Canonical echo listing every key; parsing it back reproduces cfg exactly.
std::string serialize_config(const SimConfig& cfg);

// Cross-field invariants; parse and apply_override call this implicitly only
// for single-key range checks, so call validate before running.
void validate(const SimConfig& cfg);

std::vector<ConfigKeyDoc> config_schema_docs();

// Fixed-cutoff band with axial wavelength-window defaults applied, a.u.
std::pair<double, double> resolved_fixed_band(const SimConfig& cfg);

// Field synthesizer inputs in a.u. (box dimensions converted, seed attached).
FieldSpec field_spec(const SimConfig& cfg);

}  // namespace sedsim
