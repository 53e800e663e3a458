#include "sedsim/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace sedsim {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("failed to write " + path.string());
}

std::string trace_csv(const Trace& trace) {
    std::string s = "t,r,energy,ang_mom,ecc,dt_weight\n";
    for (const TraceRow& row : trace.rows()) {
        s += fmt(row.t);
        s += ',';
        s += fmt(row.r);
        s += ',';
        s += fmt(row.energy);
        s += ',';
        s += fmt(row.ang_mom);
        s += ',';
        s += fmt(row.ecc);
        s += ',';
        s += fmt(row.dt_weight);
        s += '\n';
    }
    return s;
}

std::string hist_csv(const WeightedHistogram& h) {
    std::string s = "edge_lo,edge_hi,mass,density\n";
    const auto& edges = h.edges();
    const auto& mass = h.mass();
    const double total = h.total_weight();
    for (std::size_t i = 0; i < mass.size(); ++i) {
        const double width = edges[i + 1] - edges[i];
        const double density = total > 0.0 ? mass[i] / (total * width) : 0.0;
        s += fmt(edges[i]);
        s += ',';
        s += fmt(edges[i + 1]);
        s += ',';
        s += fmt(mass[i]);
        s += ',';
        s += fmt(density);
        s += '\n';
    }
    return s;
}

json hist_totals(const WeightedHistogram& h) {
    return {{"total_weight", h.total_weight()},
            {"underflow", h.underflow()},
            {"overflow", h.overflow()}};
}

json event_json(const DetectorVerdict& v) {
    switch (v.kind) {
        case DetectorVerdict::Kind::none: return nullptr;
        case DetectorVerdict::Kind::collapse:
            return {{"kind", "collapse"}, {"t_event_au", v.t_event}, {"r_min_scaled", v.r_min}};
        case DetectorVerdict::Kind::ionization:
            return {{"kind", "ionization"},
                    {"t_event_au", v.t_event},
                    {"threshold_scaled", v.threshold},
                    {"dwell_t0", v.dwell}};
        case DetectorVerdict::Kind::critical_L: break;
    }
    return {{"kind", "critical_L"}, {"t_event_au", v.t_event}};
}

json critical_json(const DetectorVerdict& v) {
    const bool flagged = v.kind == DetectorVerdict::Kind::critical_L;
    return {{"flagged", flagged},
            {"t_first_au", flagged ? json(v.t_event) : json(nullptr)},
            {"l_crit", v.l_crit},
            {"energy_band_min_scaled", v.energy_band_min},
            {"fraction_below", v.fraction_below},
            {"fraction_below_in_band", v.fraction_below_in_band}};
}

}  // namespace

const char* verdict_kind_name(DetectorVerdict::Kind kind) {
    switch (kind) {
        case DetectorVerdict::Kind::none: return "none";
        case DetectorVerdict::Kind::collapse: return "collapse";
        case DetectorVerdict::Kind::ionization: return "ionization";
        case DetectorVerdict::Kind::critical_L: return "critical_L";
    }
    return "unknown";
}

void write_run_artifacts(const std::string& dir, const RunOutput& out) {
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);

    write_text(root / "config.ini", out.config_echo);
    write_text(root / "trace.csv", trace_csv(out.trace));
    write_text(root / "hist_r.csv", hist_csv(out.hist_r));
    write_text(root / "hist_l.csv", hist_csv(out.hist_l));
    write_text(root / "hist_energy.csv", hist_csv(out.hist_energy));
    write_text(root / "hist_ecc.csv", hist_csv(out.hist_ecc));

    json verdicts = {{"stop_reason", stop_reason_name(out.stop_reason)},
                     {"event", event_json(out.verdict)},
                     {"critical_L", critical_json(out.critical_l)}};
    write_text(root / "verdicts.json", verdicts.dump(2) + "\n");

    // Wall-clock time stays out of the artifacts on purpose: two identical
    // runs must produce bitwise identical directories.
    json metrics = {
        {"seed", out.seed},
        {"stop_reason", stop_reason_name(out.stop_reason)},
        {"steps_accepted", out.metrics.steps_accepted},
        {"steps_rejected", out.metrics.steps_rejected},
        {"windows", out.metrics.windows},
        {"cache_builds", out.metrics.cache_builds},
        {"field_evals", out.metrics.field_evals},
        {"final_state",
         {{"t", out.final_state.t},
          {"r", {out.final_state.r.x, out.final_state.r.y, out.final_state.r.z}},
          {"v", {out.final_state.v.x, out.final_state.v.y, out.final_state.v.z}}}},
        {"trace",
         {{"rows", out.trace.rows().size()},
          {"stride", out.trace.stride()},
          {"total_weight", out.trace.total_weight()}}},
        {"hist_r", hist_totals(out.hist_r)},
        {"hist_l", hist_totals(out.hist_l)},
        {"hist_energy", hist_totals(out.hist_energy)},
        {"hist_ecc", hist_totals(out.hist_ecc)},
    };
    write_text(root / "metrics.json", metrics.dump(2) + "\n");
}

std::string run_subdir(const std::string& dir, int index) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "run_%03d", index);
    return (std::filesystem::path(dir) / buf).string();
}

void write_ensemble_artifacts(const std::string& dir, const EnsembleSummary& sum) {
    const std::filesystem::path root(dir);
    std::filesystem::create_directories(root);

    write_text(root / "pooled_hist_r.csv", hist_csv(sum.pooled_r));
    write_text(root / "pooled_hist_l.csv", hist_csv(sum.pooled_l));

    json reasons = {{"t_max", 0}, {"collapse", 0}, {"ionization", 0}, {"stiffness", 0}};
    for (StopReason r : sum.stop_reasons) reasons[stop_reason_name(r)] = reasons[stop_reason_name(r)].get<int>() + 1;

    json runs = json::array();
    int critical_flagged = 0;
    for (std::size_t i = 0; i < sum.verdicts.size(); ++i) {
        const DetectorVerdict& v = sum.verdicts[i];
        const DetectorVerdict& c = sum.critical[i];
        const bool flagged = c.kind == DetectorVerdict::Kind::critical_L;
        if (flagged) ++critical_flagged;
        runs.push_back({{"seed", sum.seed_base + i},
                        {"stop_reason", stop_reason_name(sum.stop_reasons[i])},
                        {"event", event_json(v)},
                        {"critical_flagged", flagged},
                        {"fraction_below", c.fraction_below}});
    }

    const auto pct = [](const EnsemblePercentiles& p) {
        return json{{"p5", p.p5}, {"p25", p.p25}, {"p50", p.p50}, {"p75", p.p75}, {"p95", p.p95}};
    };
    json summary = {{"n_runs", sum.n_runs},
                    {"seed_base", sum.seed_base},
                    {"ks_to_ground_state", sum.ks_to_ground_state},
                    {"stop_reasons", reasons},
                    {"critical_flagged", critical_flagged},
                    {"runs", runs},
                    {"percentiles",
                     {{"r_scaled", pct(sum.pct_r)},
                      {"energy_scaled", pct(sum.pct_energy)},
                      {"ecc", pct(sum.pct_ecc)}}},
                    {"pooled_r", hist_totals(sum.pooled_r)},
                    {"pooled_l", hist_totals(sum.pooled_l)}};
    write_text(root / "summary.json", summary.dump(2) + "\n");
}

Trace read_trace_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open trace csv: " + path);
    std::string line;
    if (!std::getline(f, line) || line.rfind("t,", 0) != 0)
        throw std::runtime_error("trace csv has a bad header: " + path);

    Trace trace(1);
    std::size_t line_no = 1;
    while (std::getline(f, line)) {
        ++line_no;
        if (line.empty()) continue;
        TraceRow row;
        const int n = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &row.t, &row.r,
                                  &row.energy, &row.ang_mom, &row.ecc, &row.dt_weight);
        if (n != 6)
            throw std::runtime_error("trace csv line " + std::to_string(line_no) +
                                     " is malformed: " + path);
        trace.record(row);
    }
    return trace;
}

}  // namespace sedsim
