#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sedsim/config.hpp"
#include "sedsim/detectors.hpp"
#include "sedsim/trace.hpp"

namespace sedsim {

enum class StopReason { t_max, collapse, ionization, stiffness };
const char* stop_reason_name(StopReason r);

struct RunMetrics {
    std::uint64_t steps_accepted = 0;
    std::uint64_t steps_rejected = 0;
    std::uint64_t windows = 0;
    std::uint64_t cache_builds = 0;
    std::uint64_t field_evals = 0;  // direct mode summations (knots + axial steps)
    // Wall time is reported on the console only; output artifacts stay
    // bitwise reproducible.
    double wall_seconds = 0.0;
};

struct RunOutput {
    std::uint64_t seed = 0;
    Trace trace;
    // Histograms are time-weighted in charge-scaled units and built from the
    // undecimated sample stream.
    WeightedHistogram hist_r;
    WeightedHistogram hist_l;
    WeightedHistogram hist_energy;
    WeightedHistogram hist_ecc;
    DetectorVerdict verdict;     // none / collapse / ionization, earliest wins
    DetectorVerdict critical_l;  // monitor summary, never stops a run
    StopReason stop_reason = StopReason::t_max;
    State final_state;
    RunMetrics metrics;
    std::string config_echo;
};

struct RunOptions {
    // Write a snapshot and return after this many completed field windows;
    // values <= 0 run to completion.  A paused run's output is provisional:
    // its trace is unflushed and held-back histogram mass stays held back.
    int stop_after_window = 0;
    // Write a snapshot every N completed windows and keep running (0 = off).
    int checkpoint_every = 0;
    std::string snapshot_path;  // required by either option above
};

// One trajectory: per-window loop of element fit, cutoff update, field cache,
// integration, recording, and detection.
RunOutput run_trajectory(const SimConfig& cfg, const RunOptions& opts = {});

// Continue a snapshot to completion; the combined output is bitwise identical
// to the uninterrupted run.
RunOutput resume_trajectory(const std::string& snapshot_path, const RunOptions& opts = {});

struct EnsemblePercentiles {
    double p5 = 0, p25 = 0, p50 = 0, p75 = 0, p95 = 0;
};

struct EnsembleSummary {
    std::uint64_t seed_base = 0;
    int n_runs = 0;
    std::vector<DetectorVerdict> verdicts;
    std::vector<DetectorVerdict> critical;
    std::vector<StopReason> stop_reasons;
    WeightedHistogram pooled_r;
    WeightedHistogram pooled_l;
    // Pooled scaled radius against the Z = 1 ground-state radial CDF (charge
    // scaling maps every Z onto it).
    double ks_to_ground_state = 0.0;
    EnsemblePercentiles pct_r, pct_energy, pct_ecc;
};

// Runs seeds seed_base .. seed_base + n - 1 on a worker pool.  Results are
// merged in seed order, so any worker count produces identical output.
// per_run, when set, is invoked from worker threads with each finished run;
// runs are never passed twice and indices never collide.
EnsembleSummary run_ensemble(const SimConfig& base, int n_runs, std::uint64_t seed_base,
                             int workers,
                             const std::function<void(int, const RunOutput&)>& per_run = {});

}  // namespace sedsim
