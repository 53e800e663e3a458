#include "sedsim/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "sedsim/constants.hpp"
#include "sedsim/errors.hpp"
#include "sedsim/units.hpp"

namespace sedsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty()) throw std::invalid_argument("empty numeric value");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) throw std::invalid_argument("bad numeric value '" + t + "'");
    return v;
}

int parse_int(const std::string& s) {
    const double v = parse_double(s);
    if (v != std::floor(v) || std::fabs(v) > 2e9)
        throw std::invalid_argument("bad integer value '" + trim(s) + "'");
    return static_cast<int>(v);
}

std::uint64_t parse_u64(const std::string& s) {
    const std::string t = trim(s);
    if (t.empty() || t[0] == '-') throw std::invalid_argument("bad unsigned value '" + t + "'");
    char* end = nullptr;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (end != t.c_str() + t.size()) throw std::invalid_argument("bad unsigned value '" + t + "'");
    return v;
}

bool parse_bool(const std::string& s) {
    const std::string t = trim(s);
    if (t == "true" || t == "1" || t == "on" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "off" || t == "no") return false;
    throw std::invalid_argument("bad boolean value '" + t + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (const std::string t = trim(cur); !t.empty()) out.push_back(t);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (const std::string t = trim(cur); !t.empty()) out.push_back(t);
    return out;
}

// "name(a, b, ...)" with numeric arguments.
std::vector<double> parse_call(const std::string& s, const std::string& name,
                               std::size_t arity) {
    const std::string t = trim(s);
    if (t.rfind(name + "(", 0) != 0 || t.back() != ')')
        throw std::invalid_argument("expected " + name + "(...)");
    const std::string inner = t.substr(name.size() + 1, t.size() - name.size() - 2);
    const std::vector<std::string> parts = split_list(inner);
    if (parts.size() != arity)
        throw std::invalid_argument(name + " takes " + std::to_string(arity) + " arguments");
    std::vector<double> out;
    for (const auto& p : parts) out.push_back(parse_double(p));
    return out;
}

std::string forces_to_string(const ForceModel& f) {
    std::vector<std::string> names;
    if (f.coulomb) names.push_back("coulomb");
    if (f.radiation_reaction) names.push_back("radiation_reaction");
    if (f.field_electric) names.push_back("field_electric");
    if (f.field_magnetic) names.push_back("field_magnetic");
    if (names.empty()) return "none";
    std::string out = names[0];
    for (std::size_t i = 1; i < names.size(); ++i) out += ", " + names[i];
    return out;
}

ForceModel forces_from_string(const std::string& s) {
    ForceModel f;
    f.coulomb = false;
    if (trim(s) == "none") return f;
    for (const std::string& name : split_list(s)) {
        if (name == "coulomb") {
            f.coulomb = true;
        } else if (name == "radiation_reaction") {
            f.radiation_reaction = true;
        } else if (name == "field_electric") {
            f.field_electric = true;
        } else if (name == "field_magnetic") {
            f.field_magnetic = true;
        } else {
            throw std::invalid_argument("unknown force term '" + name + "'");
        }
    }
    return f;
}

std::string initial_to_string(const InitialSpec& ini) {
    switch (ini.kind) {
        case InitialSpec::Kind::circular: return "circular(" + fmt_double(ini.r0) + ")";
        case InitialSpec::Kind::circular_scaled:
            return "circular_scaled(" + fmt_double(ini.r0) + ")";
        case InitialSpec::Kind::explicit_state:
            return "state(" + fmt_double(ini.state.r.x) + ", " + fmt_double(ini.state.r.y) +
                   ", " + fmt_double(ini.state.r.z) + ", " + fmt_double(ini.state.v.x) + ", " +
                   fmt_double(ini.state.v.y) + ", " + fmt_double(ini.state.v.z) + ")";
    }
    throw std::invalid_argument("bad initial state kind");
}

InitialSpec initial_from_string(const std::string& s) {
    InitialSpec ini;
    const std::string t = trim(s);
    if (t.rfind("circular_scaled", 0) == 0) {
        ini.kind = InitialSpec::Kind::circular_scaled;
        ini.r0 = parse_call(t, "circular_scaled", 1)[0];
    } else if (t.rfind("circular", 0) == 0) {
        ini.kind = InitialSpec::Kind::circular;
        ini.r0 = parse_call(t, "circular", 1)[0];
    } else if (t.rfind("state", 0) == 0) {
        ini.kind = InitialSpec::Kind::explicit_state;
        const auto v = parse_call(t, "state", 6);
        ini.state.r = {v[0], v[1], v[2]};
        ini.state.v = {v[3], v[4], v[5]};
    } else {
        throw std::invalid_argument("initial must be circular(...), circular_scaled(...), or state(...)");
    }
    if (ini.kind != InitialSpec::Kind::explicit_state && !(ini.r0 > 0.0))
        throw std::invalid_argument("circular radius must be > 0");
    return ini;
}

struct KeyDef {
    const char* section;
    const char* key;
    const char* doc;
    std::function<void(SimConfig&, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

int positive_int(const std::string& s, const char* what) {
    const int v = parse_int(s);
    if (v < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
    return v;
}

double positive_double(const std::string& s, const char* what) {
    const double v = parse_double(s);
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
    return v;
}

double nonneg_double(const std::string& s, const char* what) {
    const double v = parse_double(s);
    if (!(v >= 0.0)) throw std::invalid_argument(std::string(what) + " must be >= 0");
    return v;
}

const std::vector<KeyDef>& schema() {
    static const std::vector<KeyDef> defs = {
        {"sim", "Z", "nuclear charge number, >= 1",
         [](SimConfig& c, const std::string& v) { c.Z = positive_int(v, "Z"); },
         [](const SimConfig& c) { return std::to_string(c.Z); }},
        {"sim", "seed", "base RNG seed (unsigned 64-bit)",
         [](SimConfig& c, const std::string& v) { c.seed = parse_u64(v); },
         [](const SimConfig& c) { return std::to_string(c.seed); }},
        {"sim", "forces",
         "active terms: coulomb, radiation_reaction, field_electric, field_magnetic (or none)",
         [](SimConfig& c, const std::string& v) { c.forces = forces_from_string(v); },
         [](const SimConfig& c) { return forces_to_string(c.forces); }},
        {"sim", "field_model", "none | dipole_1d | axial_plane_wave",
         [](SimConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "none") {
                 c.field_model = FieldModel::none;
             } else if (t == "dipole_1d") {
                 c.field_model = FieldModel::dipole_1d;
             } else if (t == "axial_plane_wave") {
                 c.field_model = FieldModel::axial_plane_wave;
             } else {
                 throw std::invalid_argument("unknown field model '" + t + "'");
             }
         },
         [](const SimConfig& c) -> std::string {
             switch (c.field_model) {
                 case FieldModel::none: return "none";
                 case FieldModel::dipole_1d: return "dipole_1d";
                 case FieldModel::axial_plane_wave: return "axial_plane_wave";
             }
             return "none";
         }},
        {"sim", "integrator", "fixed_rk4 | adaptive_rk4",
         [](SimConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "fixed_rk4") {
                 c.integrator = IntegratorKind::fixed_rk4;
             } else if (t == "adaptive_rk4") {
                 c.integrator = IntegratorKind::adaptive_rk4;
             } else {
                 throw std::invalid_argument("unknown integrator '" + t + "'");
             }
         },
         [](const SimConfig& c) -> std::string {
             return c.integrator == IntegratorKind::fixed_rk4 ? "fixed_rk4" : "adaptive_rk4";
         }},
        {"sim", "steps_per_orbit", "fixed-integrator steps per orbital period",
         [](SimConfig& c, const std::string& v) {
             c.steps_per_orbit = positive_int(v, "steps_per_orbit");
         },
         [](const SimConfig& c) { return std::to_string(c.steps_per_orbit); }},
        {"sim", "field_updates_per_orbit", "field cache refreshes per orbital period",
         [](SimConfig& c, const std::string& v) {
             c.field_updates_per_orbit = positive_int(v, "field_updates_per_orbit");
         },
         [](const SimConfig& c) { return std::to_string(c.field_updates_per_orbit); }},
        {"sim", "t_max_t0", "run length in t0 = 1/Z^2 a.u. (exclusive with t_max_orbits)",
         [](SimConfig& c, const std::string& v) { c.t_max_t0 = nonneg_double(v, "t_max_t0"); },
         [](const SimConfig& c) { return fmt_double(c.t_max_t0); }},
        {"sim", "t_max_orbits", "run length in initial orbital periods (exclusive with t_max_t0)",
         [](SimConfig& c, const std::string& v) {
             c.t_max_orbits = nonneg_double(v, "t_max_orbits");
         },
         [](const SimConfig& c) { return fmt_double(c.t_max_orbits); }},
        {"sim", "dt_init_t0", "first adaptive step in t0 units; 0 derives it from steps_per_orbit",
         [](SimConfig& c, const std::string& v) { c.dt_init_t0 = nonneg_double(v, "dt_init_t0"); },
         [](const SimConfig& c) { return fmt_double(c.dt_init_t0); }},
        {"sim", "adaptive_tol", "adaptive step error tolerance",
         [](SimConfig& c, const std::string& v) {
             c.adaptive_tol = positive_double(v, "adaptive_tol");
         },
         [](const SimConfig& c) { return fmt_double(c.adaptive_tol); }},
        {"sim", "dt_min", "adaptive step underflow bound, a.u.",
         [](SimConfig& c, const std::string& v) { c.dt_min = positive_double(v, "dt_min"); },
         [](const SimConfig& c) { return fmt_double(c.dt_min); }},
        {"sim", "singularity_radius", "Coulomb guard radius, a.u.",
         [](SimConfig& c, const std::string& v) {
             c.singularity_radius = positive_double(v, "singularity_radius");
         },
         [](const SimConfig& c) { return fmt_double(c.singularity_radius); }},
        {"sim", "initial",
         "circular(r_au) | circular_scaled(r_bohr) | state(rx, ry, rz, vx, vy, vz)",
         [](SimConfig& c, const std::string& v) { c.initial = initial_from_string(v); },
         [](const SimConfig& c) { return initial_to_string(c.initial); }},

        {"cutoff", "kind", "fixed | moving",
         [](SimConfig& c, const std::string& v) {
             const std::string t = trim(v);
             if (t == "fixed") {
                 c.cutoff.kind = CutoffPolicy::Kind::fixed;
             } else if (t == "moving") {
                 c.cutoff.kind = CutoffPolicy::Kind::moving;
             } else {
                 throw std::invalid_argument("unknown cutoff kind '" + t + "'");
             }
         },
         [](const SimConfig& c) -> std::string {
             return c.cutoff.kind == CutoffPolicy::Kind::fixed ? "fixed" : "moving";
         }},
        {"cutoff", "omega_min", "fixed band lower edge, a.u. (0 = axial wavelength default)",
         [](SimConfig& c, const std::string& v) {
             c.cutoff.omega_min = nonneg_double(v, "omega_min");
         },
         [](const SimConfig& c) { return fmt_double(c.cutoff.omega_min); }},
        {"cutoff", "omega_max", "fixed band upper edge, a.u. (0 = axial wavelength default)",
         [](SimConfig& c, const std::string& v) {
             c.cutoff.omega_max = nonneg_double(v, "omega_max");
         },
         [](const SimConfig& c) { return fmt_double(c.cutoff.omega_max); }},
        {"cutoff", "multiple", "moving band top = multiple * orbital frequency",
         [](SimConfig& c, const std::string& v) {
             c.cutoff.multiple = positive_double(v, "multiple");
         },
         [](const SimConfig& c) { return fmt_double(c.cutoff.multiple); }},
        {"cutoff", "floor", "moving band bottom and lower clamp, a.u.",
         [](SimConfig& c, const std::string& v) { c.cutoff.floor = nonneg_double(v, "floor"); },
         [](const SimConfig& c) { return fmt_double(c.cutoff.floor); }},
        {"cutoff", "ceiling", "moving band upper clamp, a.u.",
         [](SimConfig& c, const std::string& v) {
             c.cutoff.ceiling = nonneg_double(v, "ceiling");
         },
         [](const SimConfig& c) { return fmt_double(c.cutoff.ceiling); }},

        {"field", "modes", "frequency slots meshed over the creation band",
         [](SimConfig& c, const std::string& v) { c.field.modes = positive_int(v, "modes"); },
         [](const SimConfig& c) { return std::to_string(c.field.modes); }},
        {"field", "damp_omega", "spectral damping scale exp(-omega/damp_omega), a.u.; 0 = off",
         [](SimConfig& c, const std::string& v) {
             c.field.damp_omega = nonneg_double(v, "damp_omega");
         },
         [](const SimConfig& c) { return fmt_double(c.field.damp_omega); }},
        {"field", "box_lx_A", "axial box x dimension, Angstrom",
         [](SimConfig& c, const std::string& v) {
             c.field.box_lx_A = positive_double(v, "box_lx_A");
         },
         [](const SimConfig& c) { return fmt_double(c.field.box_lx_A); }},
        {"field", "box_ly_A", "axial box y dimension, Angstrom",
         [](SimConfig& c, const std::string& v) {
             c.field.box_ly_A = positive_double(v, "box_ly_A");
         },
         [](const SimConfig& c) { return fmt_double(c.field.box_ly_A); }},
        {"field", "box_lz_cm", "axial box z dimension, cm",
         [](SimConfig& c, const std::string& v) {
             c.field.box_lz_cm = positive_double(v, "box_lz_cm");
         },
         [](const SimConfig& c) { return fmt_double(c.field.box_lz_cm); }},
        {"field", "lambda_min_A", "axial default band: shortest wavelength, Angstrom",
         [](SimConfig& c, const std::string& v) {
             c.field.lambda_min_A = positive_double(v, "lambda_min_A");
         },
         [](const SimConfig& c) { return fmt_double(c.field.lambda_min_A); }},
        {"field", "lambda_max_A", "axial default band: longest wavelength, Angstrom",
         [](SimConfig& c, const std::string& v) {
             c.field.lambda_max_A = positive_double(v, "lambda_max_A");
         },
         [](const SimConfig& c) { return fmt_double(c.field.lambda_max_A); }},

        {"detectors", "ionization_threshold", "scaled energy above which the atom counts as free",
         [](SimConfig& c, const std::string& v) {
             c.detectors.ionization_threshold = parse_double(v);
         },
         [](const SimConfig& c) { return fmt_double(c.detectors.ionization_threshold); }},
        {"detectors", "ionization_dwell_t0", "time above threshold required, t0 units",
         [](SimConfig& c, const std::string& v) {
             c.detectors.ionization_dwell_t0 = positive_double(v, "ionization_dwell_t0");
         },
         [](const SimConfig& c) { return fmt_double(c.detectors.ionization_dwell_t0); }},
        {"detectors", "collapse_r_min", "collapse radius, scaled Bohr radii",
         [](SimConfig& c, const std::string& v) {
             c.detectors.collapse_r_min = positive_double(v, "collapse_r_min");
         },
         [](const SimConfig& c) { return fmt_double(c.detectors.collapse_r_min); }},
        {"detectors", "critical_L", "near-ionization angular momentum threshold, hbar",
         [](SimConfig& c, const std::string& v) {
             c.detectors.critical_L = positive_double(v, "critical_L");
         },
         [](const SimConfig& c) { return fmt_double(c.detectors.critical_L); }},
        {"detectors", "energy_band_min", "scaled energy floor of the near-zero band",
         [](SimConfig& c, const std::string& v) {
             c.detectors.energy_band_min = parse_double(v);
         },
         [](const SimConfig& c) { return fmt_double(c.detectors.energy_band_min); }},
        {"detectors", "exclude_ionization_tail",
         "drop the ionization moment from histograms (true/false)",
         [](SimConfig& c, const std::string& v) {
             c.detectors.exclude_ionization_tail = parse_bool(v);
         },
         [](const SimConfig& c) -> std::string {
             return c.detectors.exclude_ionization_tail ? "true" : "false";
         }},

        {"output", "trace_stride", "keep every n-th sample in the trace, weight-conserving",
         [](SimConfig& c, const std::string& v) {
             c.output.trace_stride = positive_int(v, "trace_stride");
         },
         [](const SimConfig& c) { return std::to_string(c.output.trace_stride); }},
        {"output", "hist_bins", "bins for the radius and angular momentum histograms",
         [](SimConfig& c, const std::string& v) {
             c.output.hist_bins = positive_int(v, "hist_bins");
         },
         [](const SimConfig& c) { return std::to_string(c.output.hist_bins); }},
        {"output", "hist_r_max", "radius histogram upper edge, scaled Bohr radii",
         [](SimConfig& c, const std::string& v) {
             c.output.hist_r_max = positive_double(v, "hist_r_max");
         },
         [](const SimConfig& c) { return fmt_double(c.output.hist_r_max); }},
        {"output", "hist_l_max", "angular momentum histogram upper edge, hbar",
         [](SimConfig& c, const std::string& v) {
             c.output.hist_l_max = positive_double(v, "hist_l_max");
         },
         [](const SimConfig& c) { return fmt_double(c.output.hist_l_max); }},
    };
    return defs;
}

const KeyDef* find_key(const std::string& section, const std::string& key) {
    for (const KeyDef& def : schema())
        if (section == def.section && key == def.key) return &def;
    return nullptr;
}

}  // namespace

SimConfig parse_config_text(const std::string& text, const std::string& source_name) {
    SimConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;  // empty until the first [section] header
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);

        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            bool known = false;
            for (const KeyDef& def : schema())
                if (section == def.section) known = true;
            if (!known) throw ConfigError(where + ": unknown section '" + section + "'");
            continue;
        }

        if (section.empty())
            throw ConfigError(where + ": key before any [section] header");
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        const KeyDef* def = find_key(section, key);
        if (def == nullptr)
            throw ConfigError(where + ": unknown key '" + section + "." + key + "'");
        try {
            def->set(cfg, value);
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    return cfg;
}

SimConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void apply_override(SimConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("override '" + assignment + "' is not of the form key=value");
    std::string key = trim(assignment.substr(0, eq));
    const std::string value = trim(assignment.substr(eq + 1));

    const KeyDef* def = nullptr;
    const std::size_t dot = key.find('.');
    if (dot != std::string::npos) {
        def = find_key(key.substr(0, dot), key.substr(dot + 1));
    } else {
        for (const KeyDef& d : schema()) {
            if (key == d.key) {
                if (def != nullptr)
                    throw ConfigError("override key '" + key + "' is ambiguous; qualify it");
                def = &d;
            }
        }
    }
    if (def == nullptr) throw ConfigError("unknown override key '" + key + "'");
    try {
        def->set(cfg, value);
    } catch (const std::exception& e) {
        throw ConfigError("override '" + assignment + "': " + e.what());
    }
}

std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream out;
    std::string section;
    for (const KeyDef& def : schema()) {
        if (section != def.section) {
            if (!section.empty()) out << "\n";
            section = def.section;
            out << "[" << section << "]\n";
        }
        out << def.key << " = " << def.get(cfg) << "\n";
    }
    return out.str();
}

std::vector<ConfigKeyDoc> config_schema_docs() {
    std::vector<ConfigKeyDoc> docs;
    for (const KeyDef& def : schema()) docs.push_back({def.section, def.key, def.doc});
    return docs;
}

void validate(const SimConfig& cfg) {
    if (cfg.Z < 1) throw ConfigError("Z must be >= 1");
    if (cfg.steps_per_orbit < 2 * cfg.field_updates_per_orbit)
        throw ConfigError("steps_per_orbit must be at least 2 * field_updates_per_orbit");
    if (cfg.field_model == FieldModel::none &&
        (cfg.forces.field_electric || cfg.forces.field_magnetic))
        throw ConfigError("field forces require a field model");
    if (cfg.forces.field_magnetic && !cfg.forces.field_electric)
        throw ConfigError("field_magnetic requires field_electric");
    const bool has_t0 = cfg.t_max_t0 > 0.0;
    const bool has_orbits = cfg.t_max_orbits > 0.0;
    if (has_t0 == has_orbits)
        throw ConfigError("exactly one of t_max_t0 and t_max_orbits must be set");
    if (cfg.initial.kind != InitialSpec::Kind::explicit_state && !(cfg.initial.r0 > 0.0))
        throw ConfigError("circular initial radius must be > 0");

    if (cfg.field_model != FieldModel::none) {
        if (cfg.cutoff.kind == CutoffPolicy::Kind::fixed) {
            const auto [lo, hi] = resolved_fixed_band(cfg);
            if (!(hi > lo) || lo < 0.0)
                throw ConfigError("fixed cutoff needs 0 <= omega_min < omega_max");
        } else {
            if (!(cfg.cutoff.ceiling > cfg.cutoff.floor) || cfg.cutoff.floor < 0.0)
                throw ConfigError("moving cutoff needs 0 <= floor < ceiling");
        }
        if (cfg.field_model == FieldModel::axial_plane_wave &&
            !(cfg.field.lambda_min_A < cfg.field.lambda_max_A))
            throw ConfigError("axial wavelength window needs lambda_min_A < lambda_max_A");
    }
}

std::pair<double, double> resolved_fixed_band(const SimConfig& cfg) {
    double lo = cfg.cutoff.omega_min;
    double hi = cfg.cutoff.omega_max;
    if (lo == 0.0 && hi == 0.0 && cfg.field_model == FieldModel::axial_plane_wave) {
        // omega = 2 pi / (alpha lambda): long wavelengths bound the band below.
        const double ang_to_au = 1e-10 / Constants::au_length_si;
        lo = kTwoPi / (Constants::alpha * cfg.field.lambda_max_A * ang_to_au);
        hi = kTwoPi / (Constants::alpha * cfg.field.lambda_min_A * ang_to_au);
    }
    return {lo, hi};
}

FieldSpec field_spec(const SimConfig& cfg) {
    FieldSpec spec;
    spec.model = cfg.field_model;
    spec.mode_budget = cfg.field.modes;
    spec.damp_omega = cfg.field.damp_omega;
    const double ang_to_au = 1e-10 / Constants::au_length_si;
    const double cm_to_au = 1e-2 / Constants::au_length_si;
    spec.box_lx = cfg.field.box_lx_A * ang_to_au;
    spec.box_ly = cfg.field.box_ly_A * ang_to_au;
    spec.box_lz = cfg.field.box_lz_cm * cm_to_au;
    spec.rng.seed = cfg.seed;
    return spec;
}

}  // namespace sedsim
