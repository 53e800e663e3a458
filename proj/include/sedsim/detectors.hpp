#pragma once

#include <limits>

#include "sedsim/trace.hpp"

namespace sedsim {

// Default thresholds in the trace's own units.  The runner converts its
// charge-scaled configuration before constructing detectors.
inline constexpr double kDefaultIonizationThreshold = -0.05;
inline constexpr double kDefaultCollapseRadius = 0.05;
inline constexpr double kDefaultCriticalL = 0.588;
inline constexpr double kDefaultEnergyBandMin = -0.1;

struct DetectorVerdict {
    enum class Kind { none, collapse, ionization, critical_L };
    Kind kind = Kind::none;
    double t_event = std::numeric_limits<double>::quiet_NaN();
    // Thresholds echoed for the record; unused fields stay zero.
    double threshold = 0.0;
    double dwell = 0.0;
    double r_min = 0.0;
    double l_crit = 0.0;
    double energy_band_min = 0.0;
    // critical_L only: fraction of trace time below l_crit, and the part of
    // it spent inside the near-zero energy band.
    double fraction_below = 0.0;
    double fraction_below_in_band = 0.0;
};

// Ionization: fires at the start T of the first above-threshold run whose
// observed length reaches dwell, i.e. energy > threshold at every sample in
// [T, T + dwell].  Shorter excursions never fire, nor does a run cut off by
// the end of the data.
class IonizationDetector {
public:
    struct Checkpoint {
        bool open = false;
        bool fired = false;
        double run_start = 0.0;
        double t_event = 0.0;
    };

    IonizationDetector(double threshold, double dwell);
    bool update(double t, double energy);  // feed samples in time order
    bool fired() const { return fired_; }
    double t_event() const { return t_event_; }
    // Hold-back hook for histogram exclusion of the ionization moment.
    bool in_open_run() const { return open_; }
    double open_run_start() const { return run_start_; }
    Checkpoint checkpoint() const { return {open_, fired_, run_start_, t_event_}; }
    void restore(const Checkpoint& cp);

private:
    double threshold_;
    double dwell_;
    bool open_ = false;
    bool fired_ = false;
    double run_start_ = 0.0;
    double t_event_ = std::numeric_limits<double>::quiet_NaN();
};

// Collapse: fires at the first sample with r < r_min.
class CollapseDetector {
public:
    struct Checkpoint {
        bool fired = false;
        double t_event = 0.0;
    };

    explicit CollapseDetector(double r_min);
    bool update(double t, double r);
    bool fired() const { return fired_; }
    double t_event() const { return t_event_; }
    double r_min() const { return r_min_; }
    Checkpoint checkpoint() const { return {fired_, t_event_}; }
    void restore(const Checkpoint& cp);

private:
    double r_min_;
    bool fired_ = false;
    double t_event_ = std::numeric_limits<double>::quiet_NaN();
};

// Critical angular momentum monitor.  Tracks the dwell fraction with
// L < l_crit, flags when that happens while the energy sits inside the
// near-zero band (energy > band_min).  Never stops a run.
class CriticalLMonitor {
public:
    struct Checkpoint {
        bool flagged = false;
        double t_first = 0.0;
        double total_time = 0.0;
        double below_time = 0.0;
        double below_in_band_time = 0.0;
    };

    CriticalLMonitor(double l_crit, double energy_band_min);
    void update(double t, double ang_mom, double energy, double dt);
    bool flagged() const { return flagged_; }
    double t_first() const { return t_first_; }
    double fraction_below() const;
    double fraction_below_in_band() const;
    DetectorVerdict verdict() const;
    Checkpoint checkpoint() const {
        return {flagged_, t_first_, total_time_, below_time_, below_in_band_time_};
    }
    void restore(const Checkpoint& cp);

private:
    double l_crit_;
    double band_min_;
    bool flagged_ = false;
    double t_first_ = std::numeric_limits<double>::quiet_NaN();
    double total_time_ = 0.0;
    double below_time_ = 0.0;
    double below_in_band_time_ = 0.0;
};

// Whole-trace scans built on the streaming detectors above.
DetectorVerdict detect_ionization(const Trace& trace,
                                  double threshold = kDefaultIonizationThreshold,
                                  double dwell = 1e4);
DetectorVerdict detect_collapse(const Trace& trace, double r_min = kDefaultCollapseRadius);
DetectorVerdict critical_L_monitor(const Trace& trace, double l_crit = kDefaultCriticalL,
                                   double energy_band_min = kDefaultEnergyBandMin);

}  // namespace sedsim
