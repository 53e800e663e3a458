#include "sedsim/field.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "sedsim/constants.hpp"
#include "sedsim/errors.hpp"
#include "sedsim/spectrum.hpp"

namespace sedsim {

namespace {

constexpr char kMagic[8] = {'S', 'E', 'D', 'M', 'O', 'D', 'E', '1'};
constexpr std::uint32_t kVersion = 1;

// Slots j with omega_j = origin + (j + 1/2) delta <= band_hi.
std::size_t active_slot_count(double origin, double delta, double band_hi) {
    const double q = (band_hi - origin) / delta - 0.5;
    if (q < 0.0) return 0;
    return static_cast<std::size_t>(std::floor(q)) + 1;
}

double slot_scale(const ModeSet& ms, double omega) {
    double s2 = 0.0;
    if (ms.model == FieldModel::dipole_1d) {
        s2 = kVariancePrefactor * spectral_density(omega) * ms.mesh_delta;
    } else {
        s2 = 2.0 * Constants::alpha * omega * ms.mesh_delta / (ms.box_lx * ms.box_ly);
    }
    double s = std::sqrt(s2);
    if (ms.damp_omega > 0.0) s *= std::exp(-omega / ms.damp_omega);
    return s;
}

Mode draw_slot(const ModeSet& ms, std::uint64_t slot) {
    Mode m;
    m.slot = slot;
    m.omega = ms.mesh_origin + (static_cast<double>(slot) + 0.5) * ms.mesh_delta;
    m.scale = slot_scale(ms, m.omega);
    const int terms = term_count(ms.model);
    for (int k = 0; k < terms; ++k) {
        m.amp_cos[k] = gaussian_variate(ms.rng.seed, slot, 2 * k);
        m.amp_sin[k] = gaussian_variate(ms.rng.seed, slot, 2 * k + 1);
    }
    return m;
}

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw SnapshotError("mode snapshot truncated");
    return v;
}

}  // namespace

int term_count(FieldModel model) {
    switch (model) {
        case FieldModel::none: return 0;
        case FieldModel::dipole_1d: return 3;
        case FieldModel::axial_plane_wave: return 4;
    }
    throw std::invalid_argument("unknown field model");
}

Vec3 term_polarization(FieldModel model, int term) {
    if (model == FieldModel::dipole_1d) {
        switch (term) {
            case 0: return {1, 0, 0};
            case 1: return {0, 1, 0};
            case 2: return {0, 0, 1};
        }
    } else if (model == FieldModel::axial_plane_wave) {
        switch (term) {
            case 0:
            case 2: return {1, 0, 0};
            case 1:
            case 3: return {0, 1, 0};
        }
    }
    throw std::invalid_argument("bad field term index");
}

Vec3 term_k_hat(FieldModel model, int term) {
    if (model == FieldModel::dipole_1d) return {0, 0, 0};
    if (model == FieldModel::axial_plane_wave) {
        if (term == 0 || term == 1) return {0, 0, 1};
        if (term == 2 || term == 3) return {0, 0, -1};
    }
    throw std::invalid_argument("bad field term index");
}

ModeSet sample_modes(const FieldSpec& spec, double band_lo, double band_hi) {
    if (spec.model == FieldModel::none)
        throw std::invalid_argument("sample_modes: field model is none");
    if (band_lo < 0.0 || band_hi <= band_lo)
        throw std::invalid_argument("sample_modes: band must satisfy 0 <= lo < hi");
    if (spec.mode_budget < 1) throw std::invalid_argument("sample_modes: mode_budget < 1");
    if (spec.model == FieldModel::axial_plane_wave &&
        (spec.box_lx <= 0.0 || spec.box_ly <= 0.0 || spec.box_lz <= 0.0))
        throw std::invalid_argument("sample_modes: axial model needs positive box dimensions");

    ModeSet ms;
    ms.model = spec.model;
    ms.rng = spec.rng;
    ms.band_lo = band_lo;
    ms.band_hi = band_hi;
    ms.mesh_origin = band_lo;
    ms.mesh_delta = (band_hi - band_lo) / spec.mode_budget;
    ms.damp_omega = spec.damp_omega;
    ms.box_lx = spec.box_lx;
    ms.box_ly = spec.box_ly;
    ms.box_lz = spec.box_lz;

    const std::size_t n = active_slot_count(ms.mesh_origin, ms.mesh_delta, band_hi);
    ms.modes.reserve(n);
    for (std::size_t j = 0; j < n; ++j) ms.modes.push_back(draw_slot(ms, j));
    return ms;
}

ModeSet apply_moving_cutoff(const ModeSet& ms, double orbital_freq, const CutoffPolicy& policy) {
    if (ms.model == FieldModel::none)
        throw std::invalid_argument("apply_moving_cutoff: empty field model");
    if (policy.kind != CutoffPolicy::Kind::moving)
        throw std::invalid_argument("apply_moving_cutoff: policy is not moving");
    if (policy.floor != ms.mesh_origin)
        throw std::invalid_argument("apply_moving_cutoff: policy floor does not match the mesh");
    if (!(orbital_freq > 0.0))
        throw std::invalid_argument("apply_moving_cutoff: orbital frequency must be positive");

    const double target = policy.multiple * orbital_freq;
    const double new_hi = std::min(std::max(target, policy.floor), policy.ceiling);

    ModeSet out = ms;
    out.band_hi = new_hi;
    const std::size_t n = active_slot_count(ms.mesh_origin, ms.mesh_delta, new_hi);
    if (n <= ms.modes.size()) {
        out.modes.assign(ms.modes.begin(), ms.modes.begin() + n);
    } else {
        out.modes = ms.modes;
        out.modes.reserve(n);
        for (std::size_t j = ms.modes.size(); j < n; ++j) out.modes.push_back(draw_slot(out, j));
    }
    return out;
}

FieldSample eval_field(const ModeSet& ms, double t, const Vec3& r) {
    FieldSample f;
    if (ms.model == FieldModel::dipole_1d) {
        for (const Mode& m : ms.modes) {
            const double phase = -m.omega * t;
            const double c = std::cos(phase);
            const double s = std::sin(phase);
            f.E.x += m.scale * (m.amp_cos[0] * c - m.amp_sin[0] * s);
            f.E.y += m.scale * (m.amp_cos[1] * c - m.amp_sin[1] * s);
            f.E.z += m.scale * (m.amp_cos[2] * c - m.amp_sin[2] * s);
        }
    } else if (ms.model == FieldModel::axial_plane_wave) {
        for (const Mode& m : ms.modes) {
            const double kz = Constants::alpha * m.omega * r.z;
            for (int term = 0; term < 4; ++term) {
                const double phase = (term < 2 ? kz : -kz) - m.omega * t;
                const double amp =
                    m.scale * (m.amp_cos[term] * std::cos(phase) - m.amp_sin[term] * std::sin(phase));
                const Vec3 e_term = term_polarization(ms.model, term) * amp;
                f.E += e_term;
                f.B += term_k_hat(ms.model, term).cross(e_term);
            }
        }
    }
    return f;
}

FieldCache make_cache(const ModeSet& ms, double t_start, double t_end, int n_knots,
                      const Vec3& position) {
    if (!(t_end > t_start)) throw std::invalid_argument("make_cache: empty time window");
    if (n_knots < 2) throw std::invalid_argument("make_cache: need at least 2 knots");

    FieldCache cache;
    cache.t_start = t_start;
    cache.t_end = t_end;
    cache.knot_dt = (t_end - t_start) / (n_knots - 1);
    cache.position = position;
    cache.knots.reserve(n_knots);
    for (int i = 0; i < n_knots; ++i)
        cache.knots.push_back(eval_field(ms, t_start + i * cache.knot_dt, position));
    return cache;
}

FieldSample cache_eval(const FieldCache& cache, double t) {
    if (t < cache.t_start || t > cache.t_end)
        throw std::out_of_range("cache_eval: time outside the cached window");
    std::size_t i = static_cast<std::size_t>((t - cache.t_start) / cache.knot_dt);
    if (i > cache.knots.size() - 2) i = cache.knots.size() - 2;
    const double u = (t - (cache.t_start + i * cache.knot_dt)) / cache.knot_dt;
    const FieldSample& a = cache.knots[i];
    const FieldSample& b = cache.knots[i + 1];
    FieldSample out;
    out.E = a.E + (b.E - a.E) * u;
    out.B = a.B + (b.B - a.B) * u;
    return out;
}

void save_modeset(const ModeSet& ms, std::ostream& out) {
    out.write(kMagic, sizeof(kMagic));
    put(out, kVersion);
    put(out, static_cast<std::uint8_t>(ms.model));
    put(out, ms.rng.seed);
    put(out, ms.band_lo);
    put(out, ms.band_hi);
    put(out, ms.mesh_origin);
    put(out, ms.mesh_delta);
    put(out, ms.damp_omega);
    put(out, ms.box_lx);
    put(out, ms.box_ly);
    put(out, ms.box_lz);
    put(out, static_cast<std::uint64_t>(ms.modes.size()));
    for (const Mode& m : ms.modes) {
        put(out, m.slot);
        put(out, m.omega);
        put(out, m.scale);
        for (double v : m.amp_cos) put(out, v);
        for (double v : m.amp_sin) put(out, v);
    }
    if (!out) throw SnapshotError("mode snapshot write failed");
}

ModeSet load_modeset(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw SnapshotError("mode snapshot has a bad header");
    if (get<std::uint32_t>(in) != kVersion)
        throw SnapshotError("mode snapshot has an unsupported version");

    ModeSet ms;
    ms.model = static_cast<FieldModel>(get<std::uint8_t>(in));
    if (ms.model != FieldModel::dipole_1d && ms.model != FieldModel::axial_plane_wave &&
        ms.model != FieldModel::none)
        throw SnapshotError("mode snapshot has an unknown field model");
    ms.rng.seed = get<std::uint64_t>(in);
    ms.band_lo = get<double>(in);
    ms.band_hi = get<double>(in);
    ms.mesh_origin = get<double>(in);
    ms.mesh_delta = get<double>(in);
    ms.damp_omega = get<double>(in);
    ms.box_lx = get<double>(in);
    ms.box_ly = get<double>(in);
    ms.box_lz = get<double>(in);
    const std::uint64_t count = get<std::uint64_t>(in);
    ms.modes.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        Mode m;
        m.slot = get<std::uint64_t>(in);
        m.omega = get<double>(in);
        m.scale = get<double>(in);
        for (double& v : m.amp_cos) v = get<double>(in);
        for (double& v : m.amp_sin) v = get<double>(in);
        ms.modes.push_back(m);
    }
    return ms;
}

}  // namespace sedsim
