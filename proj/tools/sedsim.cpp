// Command-line front end: simulate / ensemble / collapse / field-stats /
// analyze / compare / schema.  Exit codes: 0 success, 1 compare mismatch,
// 2 configuration or usage error, 3 runtime failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sedsim/constants.hpp"
#include "sedsim/detectors.hpp"
#include "sedsim/errors.hpp"
#include "sedsim/output.hpp"
#include "sedsim/quantum.hpp"
#include "sedsim/runner.hpp"
#include "sedsim/spectrum.hpp"
#include "sedsim/units.hpp"

namespace {

using namespace sedsim;

int verbosity() {
    const char* v = std::getenv("SEDSIM_VERBOSITY");
    return v != nullptr ? std::atoi(v) : 1;
}

SimConfig load_cfg(const std::string& path, const std::vector<std::string>& sets) {
    SimConfig cfg = path.empty() ? SimConfig{} : parse_config_file(path);
    for (const std::string& s : sets) apply_override(cfg, s);
    validate(cfg);
    return cfg;
}

void print_run_summary(const RunOutput& out) {
    if (verbosity() < 1) return;
    std::printf("seed %llu  stop %s  t_final %.6g au  steps %llu (%llu rejected)  windows %llu\n",
                static_cast<unsigned long long>(out.seed), stop_reason_name(out.stop_reason),
                out.final_state.t, static_cast<unsigned long long>(out.metrics.steps_accepted),
                static_cast<unsigned long long>(out.metrics.steps_rejected),
                static_cast<unsigned long long>(out.metrics.windows));
    if (out.verdict.kind != DetectorVerdict::Kind::none)
        std::printf("event: %s at t = %.6g au\n", verdict_kind_name(out.verdict.kind),
                    out.verdict.t_event);
    std::printf("critical_L: flagged=%s fraction_below=%.4g in_band=%.4g\n",
                out.critical_l.kind == DetectorVerdict::Kind::critical_L ? "yes" : "no",
                out.critical_l.fraction_below, out.critical_l.fraction_below_in_band);
    std::printf("wall %.3f s\n", out.metrics.wall_seconds);
    if (verbosity() >= 2) std::fputs(out.config_echo.c_str(), stdout);
}

int cmd_simulate(const std::string& config, const std::vector<std::string>& sets,
                 const std::string& out_dir, const std::string& resume,
                 const std::string& snapshot, int stop_after, int every) {
    RunOptions opts;
    opts.stop_after_window = stop_after;
    opts.checkpoint_every = every;
    opts.snapshot_path = snapshot;

    RunOutput out = resume.empty() ? run_trajectory(load_cfg(config, sets), opts)
                                   : resume_trajectory(resume, opts);
    if (!out_dir.empty()) write_run_artifacts(out_dir, out);
    print_run_summary(out);
    return 0;
}

int cmd_ensemble(const std::string& config, const std::vector<std::string>& sets,
                 const std::string& out_dir, int runs, std::uint64_t seed_base, int workers) {
    const SimConfig cfg = load_cfg(config, sets);
    std::function<void(int, const RunOutput&)> per_run;
    if (!out_dir.empty())
        per_run = [&out_dir](int i, const RunOutput& out) {
            write_run_artifacts(run_subdir(out_dir, i), out);
        };
    const EnsembleSummary sum = run_ensemble(cfg, runs, seed_base, workers, per_run);
    if (!out_dir.empty()) write_ensemble_artifacts(out_dir, sum);
    if (verbosity() >= 1) {
        int survived = 0;
        for (StopReason r : sum.stop_reasons)
            if (r == StopReason::t_max) ++survived;
        std::printf("%d runs from seed %llu: %d reached t_max\n", sum.n_runs,
                    static_cast<unsigned long long>(sum.seed_base), survived);
        std::printf("KS(pooled r, ground state) = %.5f\n", sum.ks_to_ground_state);
        std::printf("scaled r percentiles: p5=%.4g p25=%.4g p50=%.4g p75=%.4g p95=%.4g\n",
                    sum.pct_r.p5, sum.pct_r.p25, sum.pct_r.p50, sum.pct_r.p75, sum.pct_r.p95);
    }
    return 0;
}

int cmd_collapse(int Z, double r0, double tol, const std::string& out_dir) {
    // Pure Coulomb + radiation reaction from a circular orbit; the energy
    // balance gives r^3(t) = r0^3 - 4 alpha^3 Z t, hence a closed-form fall
    // time to any target radius.
    SimConfig cfg;
    cfg.Z = Z;
    cfg.forces = {true, true, false, false};
    cfg.field_model = FieldModel::none;
    cfg.integrator = IntegratorKind::adaptive_rk4;
    cfg.adaptive_tol = tol;
    cfg.initial.kind = InitialSpec::Kind::circular;
    cfg.initial.r0 = r0;
    const double a3 = Constants::alpha * Constants::alpha * Constants::alpha;
    const double r_stop = 0.02 * r0;
    cfg.detectors.collapse_r_min = scaled_report(r_stop, Z, Dimension::length);
    const double predicted = (r0 * r0 * r0 - r_stop * r_stop * r_stop) / (4.0 * a3 * Z);
    cfg.t_max_t0 = 1.25 * predicted / bohr_time(Z);

    const RunOutput out = run_trajectory(cfg);
    if (!out_dir.empty()) write_run_artifacts(out_dir, out);
    if (out.stop_reason != StopReason::collapse) {
        std::fprintf(stderr, "no collapse before t_max (stop: %s)\n",
                     stop_reason_name(out.stop_reason));
        return 3;
    }
    const double measured = out.verdict.t_event;
    std::printf("collapse to r = %.6g au: measured t = %.10g au, predicted %.10g au, "
                "rel err %.3e\n",
                r_stop, measured, predicted, measured / predicted - 1.0);
    print_run_summary(out);
    return 0;
}

int cmd_field_stats(const std::string& config, const std::vector<std::string>& sets,
                    int samples, double span_au) {
    SimConfig cfg = load_cfg(config, sets);
    if (cfg.field_model == FieldModel::none) throw ConfigError("field-stats needs a field model");

    const FieldSpec spec = field_spec(cfg);
    double lo = 0.0, hi = 0.0;
    if (cfg.cutoff.kind == CutoffPolicy::Kind::fixed) {
        const auto band = resolved_fixed_band(cfg);
        lo = band.first;
        hi = band.second;
    } else {
        lo = cfg.cutoff.floor;
        hi = cfg.cutoff.ceiling;
    }
    const ModeSet ms = sample_modes(spec, lo, hi);

    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = span_au * (i + 0.5) / samples;
        const FieldSample f = eval_field(ms, t);
        acc += f.E.x + f.E.y + f.E.z;
        acc2 += f.E.x * f.E.x + f.E.y * f.E.y + f.E.z * f.E.z;
    }
    const double mean = acc / (3.0 * samples);
    const double var = acc2 / (3.0 * samples) - mean * mean;

    double predicted = 0.0;
    for (const Mode& m : ms.modes) predicted += m.scale * m.scale;
    if (ms.model == FieldModel::axial_plane_wave) predicted *= 4.0 / 3.0;  // 4 terms over 3 axes

    std::printf("band [%.6g, %.6g] au, %zu modes\n", ms.band_lo, ms.band_hi, ms.modes.size());
    std::printf("per-component variance: measured %.6e, mode-sum %.6e, rel err %.3e\n", var,
                predicted, var / predicted - 1.0);
    if (ms.model == FieldModel::dipole_1d)
        std::printf("band energy density (analytic): %.6e au\n",
                    analytic_band_energy(ms.band_lo, ms.band_hi));
    return 0;
}

int cmd_analyze(const std::string& dir) {
    const SimConfig cfg = parse_config_file(dir + "/config.ini");
    const Trace trace = read_trace_csv(dir + "/trace.csv");
    const int Z = cfg.Z;

    const DetectorVerdict ion = detect_ionization(
        trace, scaled_to_au(cfg.detectors.ionization_threshold, Z, Dimension::energy),
        cfg.detectors.ionization_dwell_t0 * bohr_time(Z));
    const DetectorVerdict col =
        detect_collapse(trace, scaled_to_au(cfg.detectors.collapse_r_min, Z, Dimension::length));
    const DetectorVerdict cl = critical_L_monitor(
        trace, cfg.detectors.critical_L,
        scaled_to_au(cfg.detectors.energy_band_min, Z, Dimension::energy));

    std::printf("trace: %zu rows, stride %d, weight %.6g au\n", trace.rows().size(),
                cfg.output.trace_stride, trace.total_weight());
    std::printf("ionization: %s", ion.kind == DetectorVerdict::Kind::ionization ? "fired" : "no");
    if (ion.kind == DetectorVerdict::Kind::ionization) std::printf(" at t = %.6g au", ion.t_event);
    std::printf("\ncollapse: %s", col.kind == DetectorVerdict::Kind::collapse ? "fired" : "no");
    if (col.kind == DetectorVerdict::Kind::collapse) std::printf(" at t = %.6g au", col.t_event);
    std::printf("\ncritical_L: flagged=%s fraction_below=%.4g in_band=%.4g\n",
                cl.kind == DetectorVerdict::Kind::critical_L ? "yes" : "no", cl.fraction_below,
                cl.fraction_below_in_band);

    const WeightedHistogram ref =
        WeightedHistogram::uniform(0.0, cfg.output.hist_r_max, cfg.output.hist_bins);
    const WeightedHistogram hist = radial_histogram({&trace}, ref.edges(), static_cast<double>(Z));
    if (hist.total_weight() > 0.0)
        std::printf("KS(scaled r, ground state) = %.5f\n",
                    ks_distance(hist, [](double r) { return radial_cdf(r, 1); }));
    return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b) {
    namespace fs = std::filesystem;
    std::vector<std::string> rel;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a))
        if (entry.is_regular_file()) rel.push_back(fs::relative(entry.path(), dir_a).string());
    std::sort(rel.begin(), rel.end());

    std::size_t extra = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir_b))
        if (entry.is_regular_file()) ++extra;
    if (extra != rel.size()) {
        std::printf("differ: %zu files in %s, %zu in %s\n", rel.size(), dir_a.c_str(), extra,
                    dir_b.c_str());
        return 1;
    }
    for (const std::string& name : rel) {
        std::ifstream fa(fs::path(dir_a) / name, std::ios::binary);
        std::ifstream fb(fs::path(dir_b) / name, std::ios::binary);
        if (!fa || !fb) {
            std::printf("differ: %s missing on one side\n", name.c_str());
            return 1;
        }
        const std::string a((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
        const std::string b((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
        if (a != b) {
            std::printf("differ: %s\n", name.c_str());
            return 1;
        }
    }
    if (verbosity() >= 1) std::printf("identical: %zu files\n", rel.size());
    return 0;
}

int cmd_schema() {
    std::string section;
    for (const ConfigKeyDoc& doc : config_schema_docs()) {
        if (doc.section != section) {
            section = doc.section;
            std::printf("[%s]\n", section.c_str());
        }
        std::printf("  %-28s %s\n", doc.key.c_str(), doc.doc.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical hydrogen-like atom in a zero-point radiation field"};
    app.require_subcommand(1);

    std::string config, out_dir, resume, snapshot, dir_a, dir_b;
    std::vector<std::string> sets;
    int stop_after = 0, every = 0, runs = 8, workers = 1, samples = 20000, Z = 1;
    std::uint64_t seed_base = 1;
    double r0 = 1.0, tol = 1e-10, span_au = 2000.0;

    auto add_cfg = [&](CLI::App* sub) {
        sub->add_option("--config", config, "configuration file (see the schema verb)");
        sub->add_option("--set", sets, "override, section.key=value")->take_all();
    };

    CLI::App* sim = app.add_subcommand("simulate", "run one trajectory");
    add_cfg(sim);
    sim->add_option("--out", out_dir, "artifact directory");
    sim->add_option("--resume", resume, "continue from a snapshot (replaces --config)")
        ->excludes("--config");
    sim->add_option("--snapshot", snapshot, "snapshot file for the options below");
    sim->add_option("--stop-after-window", stop_after,
                    "pause after N field windows (needs --snapshot)");
    sim->add_option("--checkpoint-every", every,
                    "snapshot every N windows and keep going (needs --snapshot)");

    CLI::App* ens = app.add_subcommand("ensemble", "run many seeds and pool the statistics");
    add_cfg(ens);
    ens->add_option("--out", out_dir, "artifact directory (run_NNN inside)");
    ens->add_option("--runs", runs, "number of trajectories");
    ens->add_option("--seed-base", seed_base, "seed of run 0; run i uses seed-base + i");
    ens->add_option("--workers", workers, "worker threads (any count, same results)");

    CLI::App* col = app.add_subcommand(
        "collapse", "radiative inspiral benchmark against the closed-form fall time");
    col->add_option("--Z", Z, "nuclear charge");
    col->add_option("--r0", r0, "starting circular radius, a.u.");
    col->add_option("--tol", tol, "adaptive tolerance");
    col->add_option("--out", out_dir, "artifact directory");

    CLI::App* fs = app.add_subcommand("field-stats",
                                      "synthesize the configured field and check its variance");
    add_cfg(fs);
    fs->add_option("--samples", samples, "sample times");
    fs->add_option("--span", span_au, "sampling span, a.u.");

    CLI::App* ana = app.add_subcommand("analyze", "recompute detectors from a stored trace");
    ana->add_option("dir", dir_a, "run directory")->required();

    CLI::App* cmp = app.add_subcommand("compare", "bitwise-compare two artifact directories");
    cmp->add_option("dir_a", dir_a, "first directory")->required();
    cmp->add_option("dir_b", dir_b, "second directory")->required();

    CLI::App* sch = app.add_subcommand("schema", "list every configuration key");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(config, sets, out_dir, resume, snapshot, stop_after, every);
        if (ens->parsed()) return cmd_ensemble(config, sets, out_dir, runs, seed_base, workers);
        if (col->parsed()) return cmd_collapse(Z, r0, tol, out_dir);
        if (fs->parsed()) return cmd_field_stats(config, sets, samples, span_au);
        if (ana->parsed()) return cmd_analyze(dir_a);
        if (cmp->parsed()) return cmd_compare(dir_a, dir_b);
        if (sch->parsed()) return cmd_schema();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
