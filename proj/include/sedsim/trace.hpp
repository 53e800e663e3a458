#pragma once

#include <functional>
#include <vector>

#include "sedsim/orbital.hpp"
#include "sedsim/state.hpp"

namespace sedsim {

// One recorded sample.  dt_weight is the integration time the sample stands
// for, so time averages are weighted sums.
struct TraceRow {
    double t = 0.0;
    double r = 0.0;
    double energy = 0.0;
    double ang_mom = 0.0;
    double ecc = 0.0;
    double dt_weight = 0.0;
};

// Time-ordered sample store with optional stride decimation.  A decimated
// trace keeps every stride-th sample but accumulates the dt weight of the
// skipped ones onto it, so total weight is conserved exactly.
class Trace {
public:
    // Full internal state, exposed so checkpoints can restore a trace
    // mid-decimation-group bitwise.
    struct Checkpoint {
        int stride = 1;
        int pending_count = 0;
        TraceRow pending{};
        double last_t = 0.0;
        double total_weight = 0.0;
        std::vector<TraceRow> rows;
    };

    explicit Trace(int stride = 1);
    static Trace restore(const Checkpoint& cp);

    void record(const State& s, const OrbitElements& el, double dt);
    void record(const TraceRow& row);
    // Emits a partially filled decimation group, if any.
    void flush();

    const std::vector<TraceRow>& rows() const { return rows_; }
    std::vector<TraceRow>& rows() { return rows_; }
    int stride() const { return stride_; }
    double total_weight() const { return total_weight_; }
    Checkpoint checkpoint() const;

private:
    int stride_;
    int pending_count_ = 0;
    TraceRow pending_{};
    double last_t_;
    double total_weight_ = 0.0;
    std::vector<TraceRow> rows_;
};

class WeightedHistogram {
public:
    struct Checkpoint {
        std::vector<double> edges;
        std::vector<double> mass;
        double total_weight = 0.0;
        double underflow = 0.0;
        double overflow = 0.0;
    };

    WeightedHistogram() : WeightedHistogram(std::vector<double>{0.0, 1.0}) {}
    explicit WeightedHistogram(std::vector<double> edges);
    static WeightedHistogram uniform(double lo, double hi, int bins);
    static WeightedHistogram restore(const Checkpoint& cp);

    void reset();  // zero all mass, keep edges
    Checkpoint checkpoint() const;

    // Out-of-range values are counted separately and excluded from
    // total_weight, which tracks accepted mass exactly.
    void add(double value, double weight);
    void merge(const WeightedHistogram& other);  // requires identical edges

    const std::vector<double>& edges() const { return edges_; }
    const std::vector<double>& mass() const { return mass_; }
    double total_weight() const { return total_weight_; }
    double underflow() const { return underflow_; }
    double overflow() const { return overflow_; }
    std::vector<double> density() const;  // mass / (total_weight * bin width)
    double quantile(double p) const;      // weighted, linear within a bin

private:
    std::vector<double> edges_;
    std::vector<double> mass_;
    double total_weight_ = 0.0;
    double underflow_ = 0.0;
    double overflow_ = 0.0;
};

// Pools the radius column of one or more traces, weighted by dt.  r_scale
// converts trace radii into histogram units.
WeightedHistogram radial_histogram(const std::vector<const Trace*>& traces,
                                   std::vector<double> edges, double r_scale = 1.0);

// Kolmogorov-Smirnov distance between the histogram's weighted empirical CDF
// and a reference CDF, evaluated at bin edges.  Requires nonzero total weight.
double ks_distance(const WeightedHistogram& hist,
                   const std::function<double(double)>& reference_cdf);

}  // namespace sedsim
