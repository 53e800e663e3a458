#include "sedsim/detectors.hpp"

#include <stdexcept>

namespace sedsim {

IonizationDetector::IonizationDetector(double threshold, double dwell)
    : threshold_(threshold), dwell_(dwell) {
    if (!(dwell > 0.0)) throw std::invalid_argument("ionization dwell must be > 0");
}

bool IonizationDetector::update(double t, double energy) {
    if (fired_) return true;
    if (energy > threshold_) {
        if (!open_) {
            open_ = true;
            run_start_ = t;
        } else if (t - run_start_ >= dwell_) {
            fired_ = true;
            t_event_ = run_start_;
        }
    } else {
        open_ = false;
    }
    return fired_;
}

void IonizationDetector::restore(const Checkpoint& cp) {
    open_ = cp.open;
    fired_ = cp.fired;
    run_start_ = cp.run_start;
    t_event_ = cp.t_event;
}

CollapseDetector::CollapseDetector(double r_min) : r_min_(r_min) {
    if (!(r_min > 0.0)) throw std::invalid_argument("collapse radius must be > 0");
}

void CollapseDetector::restore(const Checkpoint& cp) {
    fired_ = cp.fired;
    t_event_ = cp.t_event;
}

bool CollapseDetector::update(double t, double r) {
    if (fired_) return true;
    if (r < r_min_) {
        fired_ = true;
        t_event_ = t;
    }
    return fired_;
}

CriticalLMonitor::CriticalLMonitor(double l_crit, double energy_band_min)
    : l_crit_(l_crit), band_min_(energy_band_min) {
    if (!(l_crit > 0.0)) throw std::invalid_argument("critical L must be > 0");
}

void CriticalLMonitor::update(double t, double ang_mom, double energy, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("monitor needs dt > 0");
    total_time_ += dt;
    if (ang_mom < l_crit_) {
        below_time_ += dt;
        if (energy > band_min_) {
            below_in_band_time_ += dt;
            if (!flagged_) {
                flagged_ = true;
                t_first_ = t;
            }
        }
    }
}

void CriticalLMonitor::restore(const Checkpoint& cp) {
    flagged_ = cp.flagged;
    t_first_ = cp.t_first;
    total_time_ = cp.total_time;
    below_time_ = cp.below_time;
    below_in_band_time_ = cp.below_in_band_time;
}

double CriticalLMonitor::fraction_below() const {
    return total_time_ > 0.0 ? below_time_ / total_time_ : 0.0;
}

double CriticalLMonitor::fraction_below_in_band() const {
    return total_time_ > 0.0 ? below_in_band_time_ / total_time_ : 0.0;
}

DetectorVerdict CriticalLMonitor::verdict() const {
    DetectorVerdict v;
    v.kind = flagged_ ? DetectorVerdict::Kind::critical_L : DetectorVerdict::Kind::none;
    v.t_event = t_first_;
    v.l_crit = l_crit_;
    v.energy_band_min = band_min_;
    v.fraction_below = fraction_below();
    v.fraction_below_in_band = fraction_below_in_band();
    return v;
}

DetectorVerdict detect_ionization(const Trace& trace, double threshold, double dwell) {
    IonizationDetector det(threshold, dwell);
    for (const TraceRow& row : trace.rows())
        if (det.update(row.t, row.energy)) break;
    DetectorVerdict v;
    v.threshold = threshold;
    v.dwell = dwell;
    if (det.fired()) {
        v.kind = DetectorVerdict::Kind::ionization;
        v.t_event = det.t_event();
    }
    return v;
}

DetectorVerdict detect_collapse(const Trace& trace, double r_min) {
    CollapseDetector det(r_min);
    for (const TraceRow& row : trace.rows())
        if (det.update(row.t, row.r)) break;
    DetectorVerdict v;
    v.r_min = r_min;
    if (det.fired()) {
        v.kind = DetectorVerdict::Kind::collapse;
        v.t_event = det.t_event();
    }
    return v;
}

DetectorVerdict critical_L_monitor(const Trace& trace, double l_crit, double energy_band_min) {
    CriticalLMonitor mon(l_crit, energy_band_min);
    for (const TraceRow& row : trace.rows())
        mon.update(row.t, row.ang_mom, row.energy, row.dt_weight);
    return mon.verdict();
}

}  // namespace sedsim
