#pragma once

#include <string>

#include "sedsim/runner.hpp"

namespace sedsim {

// Writes the fixed artifact set for one run into dir (created if missing,
// files overwritten): config.ini, trace.csv, hist_r.csv, hist_l.csv,
// hist_energy.csv, hist_ecc.csv, verdicts.json, metrics.json.  Artifacts are
// a pure function of the run output, so identical runs give bitwise
// identical directories.
void write_run_artifacts(const std::string& dir, const RunOutput& out);

// Ensemble-level artifacts: summary.json, pooled_hist_r.csv,
// pooled_hist_l.csv.  Per-run directories are the caller's business (pass
// write_run_artifacts through run_ensemble's per_run hook).
void write_ensemble_artifacts(const std::string& dir, const EnsembleSummary& sum);

// dir/run_NNN with a fixed three-digit index.
std::string run_subdir(const std::string& dir, int index);

// Reads a trace.csv back; rows round trip exactly.
Trace read_trace_csv(const std::string& path);

const char* verdict_kind_name(DetectorVerdict::Kind kind);

}  // namespace sedsim
