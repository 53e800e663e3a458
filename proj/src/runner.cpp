#include "sedsim/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

#include "sedsim/constants.hpp"
#include "sedsim/errors.hpp"
#include "sedsim/integrators.hpp"
#include "sedsim/quantum.hpp"
#include "sedsim/units.hpp"

namespace sedsim {

const char* stop_reason_name(StopReason r) {
    switch (r) {
        case StopReason::t_max: return "t_max";
        case StopReason::collapse: return "collapse";
        case StopReason::ionization: return "ionization";
        case StopReason::stiffness: return "stiffness";
    }
    return "unknown";
}

namespace {

constexpr char kSnapMagic[8] = {'S', 'E', 'D', 'S', 'N', 'A', 'P', '1'};
constexpr std::uint32_t kSnapVersion = 1;

// Diagnostic histogram edges in charge-scaled units; radius and angular
// momentum edges come from OutputConfig instead.
constexpr double kEnergyHistLo = -3.0;
constexpr double kEnergyHistHi = 0.5;
constexpr double kEccHistHi = 1.5;

SimConfig validated_copy(const SimConfig& cfg) {
    validate(cfg);
    return cfg;
}

double raw_ionization_threshold(const SimConfig& cfg) {
    return scaled_to_au(cfg.detectors.ionization_threshold, cfg.Z, Dimension::energy);
}

double raw_ionization_dwell(const SimConfig& cfg) {
    return cfg.detectors.ionization_dwell_t0 * bohr_time(cfg.Z);
}

double raw_collapse_radius(const SimConfig& cfg) {
    return scaled_to_au(cfg.detectors.collapse_r_min, cfg.Z, Dimension::length);
}

double raw_energy_band_min(const SimConfig& cfg) {
    return scaled_to_au(cfg.detectors.energy_band_min, cfg.Z, Dimension::energy);
}

State initial_state(const SimConfig& cfg) {
    const InitialSpec& ini = cfg.initial;
    if (ini.kind == InitialSpec::Kind::explicit_state) {
        State s = ini.state;
        s.t = 0.0;
        return s;
    }
    double radius = ini.r0;
    if (ini.kind == InitialSpec::Kind::circular_scaled)
        radius = scaled_to_au(ini.r0, cfg.Z, Dimension::length);
    State s;
    s.r = {radius, 0.0, 0.0};
    s.v = {0.0, std::sqrt(cfg.Z / radius), 0.0};
    return s;
}

// Circular-orbit frequency at the current radius; the window cadence for
// unbound transients, where no osculating period exists.
double characteristic_omega(const State& s, int Z) {
    const double r = s.r.norm();
    return std::sqrt(static_cast<double>(Z)) / (r * std::sqrt(r));
}

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw SnapshotError("run snapshot truncated");
    return v;
}

void put_string(std::ostream& out, const std::string& s) {
    put(out, static_cast<std::uint64_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
    const auto n = get<std::uint64_t>(in);
    std::string s(n, '\0');
    in.read(s.data(), static_cast<std::streamsize>(n));
    if (!in) throw SnapshotError("run snapshot truncated");
    return s;
}

void put_row(std::ostream& out, const TraceRow& row) {
    put(out, row.t);
    put(out, row.r);
    put(out, row.energy);
    put(out, row.ang_mom);
    put(out, row.ecc);
    put(out, row.dt_weight);
}

TraceRow get_row(std::istream& in) {
    TraceRow row;
    row.t = get<double>(in);
    row.r = get<double>(in);
    row.energy = get<double>(in);
    row.ang_mom = get<double>(in);
    row.ecc = get<double>(in);
    row.dt_weight = get<double>(in);
    return row;
}

void put_hist(std::ostream& out, const WeightedHistogram& h) {
    const auto cp = h.checkpoint();
    put(out, static_cast<std::uint64_t>(cp.edges.size()));
    for (double e : cp.edges) put(out, e);
    for (double m : cp.mass) put(out, m);
    put(out, cp.total_weight);
    put(out, cp.underflow);
    put(out, cp.overflow);
}

WeightedHistogram get_hist(std::istream& in) {
    WeightedHistogram::Checkpoint cp;
    const auto n_edges = get<std::uint64_t>(in);
    if (n_edges < 2 || n_edges > (1u << 24)) throw SnapshotError("run snapshot histogram corrupt");
    cp.edges.resize(n_edges);
    for (double& e : cp.edges) e = get<double>(in);
    cp.mass.resize(n_edges - 1);
    for (double& m : cp.mass) m = get<double>(in);
    cp.total_weight = get<double>(in);
    cp.underflow = get<double>(in);
    cp.overflow = get<double>(in);
    return WeightedHistogram::restore(cp);
}

// One trajectory: configuration, live integration state, and everything a
// snapshot has to capture for a bitwise-identical resume.
class Engine {
public:
    Engine(const SimConfig& cfg, bool fresh);
    static Engine from_snapshot(const std::string& path);

    RunOutput run(const RunOptions& opts);

private:
    void observe(const State& st, const OrbitElements& el, double dt);
    void add_main(double r_scaled, double l, double e_scaled, double ecc, double dt);
    void add_pending(double r_scaled, double l, double e_scaled, double ecc, double dt);
    bool event_fired() const { return col_.fired() || ion_.fired() || sing_t_.has_value(); }
    void save_snapshot(const std::string& path) const;
    void integrate_window(double w_start, double w_end, const FieldCache* cache);
    RunOutput finalize(bool paused, double wall_seconds);

    SimConfig cfg_;
    int Z_;
    double t0_;
    bool exclude_tail_;
    IonizationDetector ion_;
    CollapseDetector col_;
    CriticalLMonitor crit_;
    Trace trace_;
    WeightedHistogram hist_r_, hist_l_, hist_e_, hist_ecc_;
    WeightedHistogram pend_r_, pend_l_, pend_e_, pend_ecc_;
    bool pending_used_ = false;
    State s_;
    double t_end_ = 0.0;
    double last_omega_ = 0.0;
    double dt_next_ = 0.0;  // adaptive proposal carried across windows
    RunMetrics metrics_;
    ModeSet modes_;
    bool have_field_ = false;
    std::optional<double> sing_t_;  // singularity guard tripped mid-step
    bool stiff_ = false;
};

Engine::Engine(const SimConfig& cfg, bool fresh)
    : cfg_(validated_copy(cfg)),
      Z_(cfg_.Z),
      t0_(bohr_time(Z_)),
      exclude_tail_(cfg_.detectors.exclude_ionization_tail),
      ion_(raw_ionization_threshold(cfg_), raw_ionization_dwell(cfg_)),
      col_(raw_collapse_radius(cfg_)),
      crit_(cfg_.detectors.critical_L, raw_energy_band_min(cfg_)),
      trace_(cfg_.output.trace_stride),
      hist_r_(WeightedHistogram::uniform(0.0, cfg_.output.hist_r_max, cfg_.output.hist_bins)),
      hist_l_(WeightedHistogram::uniform(0.0, cfg_.output.hist_l_max, cfg_.output.hist_bins)),
      hist_e_(WeightedHistogram::uniform(kEnergyHistLo, kEnergyHistHi, cfg_.output.hist_bins)),
      hist_ecc_(WeightedHistogram::uniform(0.0, kEccHistHi, cfg_.output.hist_bins)),
      pend_r_(hist_r_),
      pend_l_(hist_l_),
      pend_e_(hist_e_),
      pend_ecc_(hist_ecc_) {
    if (!fresh) return;  // snapshot restore overwrites the dynamic state

    s_ = initial_state(cfg_);
    const OrbitElements el0 = elements_from_state(s_, Z_);
    if (cfg_.t_max_t0 > 0.0) {
        t_end_ = cfg_.t_max_t0 * t0_;
    } else {
        if (!el0.bound) throw ConfigError("t_max_orbits needs a bound initial state");
        t_end_ = cfg_.t_max_orbits * (kTwoPi / el0.orbital_omega);
    }
    last_omega_ = el0.bound ? el0.orbital_omega : characteristic_omega(s_, Z_);
    if (cfg_.integrator == IntegratorKind::adaptive_rk4 && cfg_.dt_init_t0 > 0.0)
        dt_next_ = cfg_.dt_init_t0 * t0_;

    if (cfg_.field_model != FieldModel::none) {
        have_field_ = true;
        const FieldSpec spec = field_spec(cfg_);
        if (cfg_.cutoff.kind == CutoffPolicy::Kind::fixed) {
            const auto [lo, hi] = resolved_fixed_band(cfg_);
            modes_ = sample_modes(spec, lo, hi);
        } else {
            // Mesh the whole envelope so slot identity survives every later
            // band position, then shrink to the initial cutoff.
            modes_ = sample_modes(spec, cfg_.cutoff.floor, cfg_.cutoff.ceiling);
            modes_ = apply_moving_cutoff(modes_, last_omega_, cfg_.cutoff);
        }
    }

    // The initial sample reaches the event detectors (a run can open or fire
    // at t = 0) but carries no dt weight, so traces and histograms skip it.
    col_.update(0.0, s_.r.norm());
    ion_.update(0.0, el0.energy);
}

void Engine::add_main(double r_scaled, double l, double e_scaled, double ecc, double dt) {
    hist_r_.add(r_scaled, dt);
    hist_l_.add(l, dt);
    hist_e_.add(e_scaled, dt);
    hist_ecc_.add(ecc, dt);
}

void Engine::add_pending(double r_scaled, double l, double e_scaled, double ecc, double dt) {
    pend_r_.add(r_scaled, dt);
    pend_l_.add(l, dt);
    pend_e_.add(e_scaled, dt);
    pend_ecc_.add(ecc, dt);
    pending_used_ = true;
}

void Engine::observe(const State& st, const OrbitElements& el, double dt) {
    TraceRow row;
    row.t = st.t;
    row.r = st.r.norm();
    row.energy = el.energy;
    row.ang_mom = el.angular_momentum.norm();
    row.ecc = el.eccentricity;
    row.dt_weight = dt;
    trace_.record(row);

    col_.update(row.t, row.r);
    ion_.update(row.t, row.energy);
    crit_.update(row.t, row.ang_mom, row.energy, dt);

    const double rs = scaled_report(row.r, Z_, Dimension::length);
    const double es = scaled_report(row.energy, Z_, Dimension::energy);

    if (!exclude_tail_) {
        add_main(rs, row.ang_mom, es, row.ecc, dt);
        return;
    }
    if (ion_.fired()) {
        // Everything since the run opened is the ionization tail; drop it.
        if (pending_used_) {
            pend_r_.reset();
            pend_l_.reset();
            pend_e_.reset();
            pend_ecc_.reset();
            pending_used_ = false;
        }
        return;
    }
    if (ion_.in_open_run()) {
        // Above-threshold excursion of unknown fate: park it until the run
        // either closes (kept) or reaches the dwell (dropped).
        add_pending(rs, row.ang_mom, es, row.ecc, dt);
        return;
    }
    if (pending_used_) {
        hist_r_.merge(pend_r_);
        hist_l_.merge(pend_l_);
        hist_e_.merge(pend_e_);
        hist_ecc_.merge(pend_ecc_);
        pend_r_.reset();
        pend_l_.reset();
        pend_e_.reset();
        pend_ecc_.reset();
        pending_used_ = false;
    }
    add_main(rs, row.ang_mom, es, row.ecc, dt);
}

void Engine::integrate_window(double w_start, double w_end, const FieldCache* cache) {
    auto accel = [&](double t, const Vec3& r, const Vec3& v) -> Vec3 {
        FieldSample f;
        if (cache != nullptr) {
            // Stage times can overshoot the window by one rounding ulp.
            f = cache_eval(*cache, std::clamp(t, cache->t_start, cache->t_end));
        } else if (have_field_) {
            f = eval_field(modes_, t, r);
            ++metrics_.field_evals;
        }
        const State stage{t, r, v};
        return total_accel(stage, Z_, cfg_.forces, f, cfg_.singularity_radius).total;
    };

    if (cfg_.integrator == IntegratorKind::fixed_rk4) {
        const int n = cfg_.steps_per_orbit;
        const double dt_u = (w_end - w_start) / n;
        for (int i = 0; i < n; ++i) {
            // Step targets sit on the window grid, so time never drifts.
            const double target = (i + 1 == n) ? w_end : w_start + (i + 1) * dt_u;
            const double dt = target - s_.t;
            s_ = rk4_step(s_, dt, accel);
            s_.t = target;
            ++metrics_.steps_accepted;
            observe(s_, elements_from_state(s_, Z_), dt);
            if (event_fired()) return;
        }
    } else {
        if (dt_next_ <= 0.0) dt_next_ = (w_end - w_start) / cfg_.steps_per_orbit;
        while (s_.t < w_end) {
            const double rem = w_end - s_.t;
            if (rem <= cfg_.dt_min) {  // sub-resolution sliver; close the window
                s_.t = w_end;
                return;
            }
            const double h = std::min(dt_next_, rem);
            const bool final_step = (h == rem);
            const AdaptiveResult res =
                adaptive_step(s_, h, cfg_.adaptive_tol, accel, cfg_.dt_min);
            s_ = res.state;
            if (final_step) s_.t = w_end;
            dt_next_ = res.dt_next;
            ++metrics_.steps_accepted;
            metrics_.steps_rejected += res.rejections;
            observe(s_, elements_from_state(s_, Z_), res.dt_used);
            if (event_fired()) return;
        }
    }
}

RunOutput Engine::run(const RunOptions& opts) {
    if ((opts.stop_after_window > 0 || opts.checkpoint_every > 0) && opts.snapshot_path.empty())
        throw std::invalid_argument("window stops and checkpoints need a snapshot path");

    const auto wall_start = std::chrono::steady_clock::now();
    bool paused = false;

    while (s_.t < t_end_ && !event_fired() && !stiff_) {
        if (t_end_ - s_.t <= cfg_.dt_min) {
            s_.t = t_end_;
            break;
        }
        const OrbitElements el = elements_from_state(s_, Z_);
        if (el.bound) last_omega_ = el.orbital_omega;
        const double w_start = s_.t;
        const double period = kTwoPi / last_omega_;
        // Absorb a trailing rounding sliver into the final window so the run
        // ends in a whole number of windows.
        const double w_end =
            t_end_ - w_start < (1.0 + 1e-9) * period ? t_end_ : w_start + period;

        if (have_field_ && cfg_.cutoff.kind == CutoffPolicy::Kind::moving)
            modes_ = apply_moving_cutoff(modes_, last_omega_, cfg_.cutoff);

        FieldCache cache;
        const FieldCache* cache_ptr = nullptr;
        if (have_field_ && modes_.model == FieldModel::dipole_1d) {
            cache = make_cache(modes_, w_start, w_end, cfg_.field_updates_per_orbit + 1);
            cache_ptr = &cache;
            ++metrics_.cache_builds;
            metrics_.field_evals += cache.knots.size();
        }

        try {
            integrate_window(w_start, w_end, cache_ptr);
        } catch (const SingularityError& err) {
            // Guard radius reached inside a step; count it as collapse there.
            s_ = err.state();
            col_.update(s_.t, s_.r.norm());
            sing_t_ = s_.t;
            break;
        } catch (const StiffnessError& err) {
            s_ = err.state();
            stiff_ = true;
            break;
        }
        if (event_fired()) break;

        ++metrics_.windows;
        const bool periodic = opts.checkpoint_every > 0 &&
                              metrics_.windows % static_cast<std::uint64_t>(opts.checkpoint_every) == 0;
        const bool pause_now = opts.stop_after_window > 0 &&
                               metrics_.windows >= static_cast<std::uint64_t>(opts.stop_after_window);
        if (periodic || pause_now) save_snapshot(opts.snapshot_path);
        if (pause_now) {
            paused = true;
            break;
        }
    }

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return finalize(paused, wall);
}

RunOutput Engine::finalize(bool paused, double wall_seconds) {
    StopReason reason = StopReason::t_max;
    if (stiff_) {
        reason = StopReason::stiffness;
    } else if (col_.fired() || sing_t_.has_value()) {
        reason = StopReason::collapse;
    } else if (ion_.fired()) {
        reason = StopReason::ionization;
    }

    if (!paused) {
        if (pending_used_) {
            // A still-open excursion at the end of data is real time; only a
            // fired detector marks it as the ionization tail.
            if (!ion_.fired()) {
                hist_r_.merge(pend_r_);
                hist_l_.merge(pend_l_);
                hist_e_.merge(pend_e_);
                hist_ecc_.merge(pend_ecc_);
            }
            pend_r_.reset();
            pend_l_.reset();
            pend_e_.reset();
            pend_ecc_.reset();
            pending_used_ = false;
        }
        trace_.flush();
    }

    RunOutput out;
    out.seed = cfg_.seed;
    out.trace = std::move(trace_);
    out.hist_r = std::move(hist_r_);
    out.hist_l = std::move(hist_l_);
    out.hist_energy = std::move(hist_e_);
    out.hist_ecc = std::move(hist_ecc_);

    DetectorVerdict v;
    if (reason == StopReason::collapse) {
        v.kind = DetectorVerdict::Kind::collapse;
        v.t_event = col_.fired() ? col_.t_event() : *sing_t_;
        v.r_min = cfg_.detectors.collapse_r_min;
    } else if (reason == StopReason::ionization) {
        v.kind = DetectorVerdict::Kind::ionization;
        v.t_event = ion_.t_event();
        v.threshold = cfg_.detectors.ionization_threshold;
        v.dwell = cfg_.detectors.ionization_dwell_t0;
    }
    out.verdict = v;
    out.critical_l = crit_.verdict();
    out.critical_l.energy_band_min = cfg_.detectors.energy_band_min;  // scaled echo

    out.stop_reason = reason;
    out.final_state = s_;
    out.metrics = metrics_;
    out.metrics.wall_seconds = wall_seconds;
    out.config_echo = serialize_config(cfg_);
    return out;
}

void Engine::save_snapshot(const std::string& path) const {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw SnapshotError("cannot open snapshot for writing: " + path);

    f.write(kSnapMagic, sizeof(kSnapMagic));
    put(f, kSnapVersion);
    put_string(f, serialize_config(cfg_));

    put(f, s_.t);
    put(f, s_.r.x);
    put(f, s_.r.y);
    put(f, s_.r.z);
    put(f, s_.v.x);
    put(f, s_.v.y);
    put(f, s_.v.z);
    put(f, t_end_);
    put(f, last_omega_);
    put(f, dt_next_);

    put(f, metrics_.steps_accepted);
    put(f, metrics_.steps_rejected);
    put(f, metrics_.windows);
    put(f, metrics_.cache_builds);
    put(f, metrics_.field_evals);

    put(f, static_cast<std::uint8_t>(pending_used_));

    const Trace::Checkpoint tc = trace_.checkpoint();
    put(f, static_cast<std::int32_t>(tc.stride));
    put(f, static_cast<std::int32_t>(tc.pending_count));
    put_row(f, tc.pending);
    put(f, tc.last_t);
    put(f, tc.total_weight);
    put(f, static_cast<std::uint64_t>(tc.rows.size()));
    for (const TraceRow& row : tc.rows) put_row(f, row);

    for (const WeightedHistogram* h :
         {&hist_r_, &hist_l_, &hist_e_, &hist_ecc_, &pend_r_, &pend_l_, &pend_e_, &pend_ecc_})
        put_hist(f, *h);

    const auto ic = ion_.checkpoint();
    put(f, static_cast<std::uint8_t>(ic.open));
    put(f, static_cast<std::uint8_t>(ic.fired));
    put(f, ic.run_start);
    put(f, ic.t_event);
    const auto cc = col_.checkpoint();
    put(f, static_cast<std::uint8_t>(cc.fired));
    put(f, cc.t_event);
    const auto mc = crit_.checkpoint();
    put(f, static_cast<std::uint8_t>(mc.flagged));
    put(f, mc.t_first);
    put(f, mc.total_time);
    put(f, mc.below_time);
    put(f, mc.below_in_band_time);

    put(f, static_cast<std::uint8_t>(have_field_));
    if (have_field_) save_modeset(modes_, f);

    f.flush();
    if (!f) throw SnapshotError("snapshot write failed: " + path);
}

Engine Engine::from_snapshot(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SnapshotError("cannot open snapshot: " + path);

    char magic[8];
    f.read(magic, sizeof(magic));
    if (!f || std::memcmp(magic, kSnapMagic, sizeof(kSnapMagic)) != 0)
        throw SnapshotError("run snapshot has a bad header");
    if (get<std::uint32_t>(f) != kSnapVersion)
        throw SnapshotError("run snapshot has an unsupported version");

    const std::string echo = get_string(f);
    Engine e(parse_config_text(echo, "snapshot"), /*fresh=*/false);

    e.s_.t = get<double>(f);
    e.s_.r.x = get<double>(f);
    e.s_.r.y = get<double>(f);
    e.s_.r.z = get<double>(f);
    e.s_.v.x = get<double>(f);
    e.s_.v.y = get<double>(f);
    e.s_.v.z = get<double>(f);
    e.t_end_ = get<double>(f);
    e.last_omega_ = get<double>(f);
    e.dt_next_ = get<double>(f);

    e.metrics_.steps_accepted = get<std::uint64_t>(f);
    e.metrics_.steps_rejected = get<std::uint64_t>(f);
    e.metrics_.windows = get<std::uint64_t>(f);
    e.metrics_.cache_builds = get<std::uint64_t>(f);
    e.metrics_.field_evals = get<std::uint64_t>(f);

    e.pending_used_ = get<std::uint8_t>(f) != 0;

    Trace::Checkpoint tc;
    tc.stride = get<std::int32_t>(f);
    tc.pending_count = get<std::int32_t>(f);
    tc.pending = get_row(f);
    tc.last_t = get<double>(f);
    tc.total_weight = get<double>(f);
    const auto n_rows = get<std::uint64_t>(f);
    tc.rows.reserve(n_rows);
    for (std::uint64_t i = 0; i < n_rows; ++i) tc.rows.push_back(get_row(f));
    e.trace_ = Trace::restore(tc);

    e.hist_r_ = get_hist(f);
    e.hist_l_ = get_hist(f);
    e.hist_e_ = get_hist(f);
    e.hist_ecc_ = get_hist(f);
    e.pend_r_ = get_hist(f);
    e.pend_l_ = get_hist(f);
    e.pend_e_ = get_hist(f);
    e.pend_ecc_ = get_hist(f);

    IonizationDetector::Checkpoint ic;
    ic.open = get<std::uint8_t>(f) != 0;
    ic.fired = get<std::uint8_t>(f) != 0;
    ic.run_start = get<double>(f);
    ic.t_event = get<double>(f);
    e.ion_.restore(ic);
    CollapseDetector::Checkpoint cc;
    cc.fired = get<std::uint8_t>(f) != 0;
    cc.t_event = get<double>(f);
    e.col_.restore(cc);
    CriticalLMonitor::Checkpoint mc;
    mc.flagged = get<std::uint8_t>(f) != 0;
    mc.t_first = get<double>(f);
    mc.total_time = get<double>(f);
    mc.below_time = get<double>(f);
    mc.below_in_band_time = get<double>(f);
    e.crit_.restore(mc);

    e.have_field_ = get<std::uint8_t>(f) != 0;
    if (e.have_field_) e.modes_ = load_modeset(f);
    return e;
}

}  // namespace

RunOutput run_trajectory(const SimConfig& cfg, const RunOptions& opts) {
    Engine engine(cfg, /*fresh=*/true);
    return engine.run(opts);
}

RunOutput resume_trajectory(const std::string& snapshot_path, const RunOptions& opts) {
    Engine engine = Engine::from_snapshot(snapshot_path);
    return engine.run(opts);
}

namespace {

EnsemblePercentiles percentiles_of(const WeightedHistogram& h) {
    EnsemblePercentiles p;
    if (h.total_weight() <= 0.0) return p;
    p.p5 = h.quantile(0.05);
    p.p25 = h.quantile(0.25);
    p.p50 = h.quantile(0.50);
    p.p75 = h.quantile(0.75);
    p.p95 = h.quantile(0.95);
    return p;
}

}  // namespace

EnsembleSummary run_ensemble(const SimConfig& base, int n_runs, std::uint64_t seed_base,
                             int workers,
                             const std::function<void(int, const RunOutput&)>& per_run) {
    if (n_runs < 1) throw std::invalid_argument("ensemble needs at least one run");
    validate(base);

    std::vector<std::unique_ptr<RunOutput>> results(n_runs);
    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;

    auto work = [&] {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= n_runs) return;
            try {
                SimConfig cfg = base;
                cfg.seed = seed_base + static_cast<std::uint64_t>(i);
                auto out = std::make_unique<RunOutput>(run_trajectory(cfg));
                if (per_run) per_run(i, *out);
                results[static_cast<std::size_t>(i)] = std::move(out);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    const int n_workers = std::clamp(workers, 1, n_runs);
    if (n_workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(work);
        for (std::thread& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    for (const auto& r : results)
        if (!r) throw std::runtime_error("ensemble worker exited without finishing its runs");

    // Seed-order merge keeps the summary independent of the worker count.
    EnsembleSummary sum;
    sum.seed_base = seed_base;
    sum.n_runs = n_runs;
    sum.pooled_r = results[0]->hist_r;
    sum.pooled_l = results[0]->hist_l;
    WeightedHistogram pooled_e = results[0]->hist_energy;
    WeightedHistogram pooled_ecc = results[0]->hist_ecc;
    for (int i = 0; i < n_runs; ++i) {
        const RunOutput& r = *results[static_cast<std::size_t>(i)];
        sum.verdicts.push_back(r.verdict);
        sum.critical.push_back(r.critical_l);
        sum.stop_reasons.push_back(r.stop_reason);
        if (i == 0) continue;
        sum.pooled_r.merge(r.hist_r);
        sum.pooled_l.merge(r.hist_l);
        pooled_e.merge(r.hist_energy);
        pooled_ecc.merge(r.hist_ecc);
    }

    // Charge scaling maps every Z onto the Z = 1 ground state, so the pooled
    // scaled radii always compare against that one CDF.
    if (sum.pooled_r.total_weight() > 0.0)
        sum.ks_to_ground_state =
            ks_distance(sum.pooled_r, [](double r) { return radial_cdf(r, 1); });
    sum.pct_r = percentiles_of(sum.pooled_r);
    sum.pct_energy = percentiles_of(pooled_e);
    sum.pct_ecc = percentiles_of(pooled_ecc);
    return sum;
}

}  // namespace sedsim
