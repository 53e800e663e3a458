#include "sedsim/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sedsim {

Trace::Trace(int stride) : stride_(stride), last_t_(-std::numeric_limits<double>::infinity()) {
    if (stride < 1) throw std::invalid_argument("trace stride must be >= 1");
}

void Trace::record(const State& s, const OrbitElements& el, double dt) {
    TraceRow row;
    row.t = s.t;
    row.r = s.r.norm();
    row.energy = el.energy;
    row.ang_mom = el.angular_momentum.norm();
    row.ecc = el.eccentricity;
    row.dt_weight = dt;
    record(row);
}

void Trace::record(const TraceRow& row) {
    if (!(row.dt_weight > 0.0)) throw std::invalid_argument("trace row needs dt_weight > 0");
    if (!(row.t > last_t_)) throw std::invalid_argument("trace rows must advance in time");
    last_t_ = row.t;
    total_weight_ += row.dt_weight;

    if (pending_count_ == 0) {
        pending_ = row;
    } else {
        pending_.dt_weight += row.dt_weight;
    }
    if (++pending_count_ == stride_) {
        rows_.push_back(pending_);
        pending_count_ = 0;
    }
}

void Trace::flush() {
    if (pending_count_ > 0) {
        rows_.push_back(pending_);
        pending_count_ = 0;
    }
}

Trace::Checkpoint Trace::checkpoint() const {
    Checkpoint cp;
    cp.stride = stride_;
    cp.pending_count = pending_count_;
    cp.pending = pending_;
    cp.last_t = last_t_;
    cp.total_weight = total_weight_;
    cp.rows = rows_;
    return cp;
}

Trace Trace::restore(const Checkpoint& cp) {
    Trace tr(cp.stride);
    tr.pending_count_ = cp.pending_count;
    tr.pending_ = cp.pending;
    tr.last_t_ = cp.last_t;
    tr.total_weight_ = cp.total_weight;
    tr.rows_ = cp.rows;
    return tr;
}

WeightedHistogram::WeightedHistogram(std::vector<double> edges) : edges_(std::move(edges)) {
    if (edges_.size() < 2) throw std::invalid_argument("histogram needs at least 2 edges");
    for (std::size_t i = 1; i < edges_.size(); ++i)
        if (!(edges_[i] > edges_[i - 1]))
            throw std::invalid_argument("histogram edges must be strictly ascending");
    mass_.assign(edges_.size() - 1, 0.0);
}

WeightedHistogram WeightedHistogram::uniform(double lo, double hi, int bins) {
    if (bins < 1 || !(hi > lo)) throw std::invalid_argument("bad uniform histogram range");
    std::vector<double> edges(bins + 1);
    for (int i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * i / bins;
    return WeightedHistogram(std::move(edges));
}

WeightedHistogram WeightedHistogram::restore(const Checkpoint& cp) {
    WeightedHistogram h(cp.edges);
    if (cp.mass.size() != h.mass_.size())
        throw std::invalid_argument("histogram checkpoint mass size mismatch");
    h.mass_ = cp.mass;
    h.total_weight_ = cp.total_weight;
    h.underflow_ = cp.underflow;
    h.overflow_ = cp.overflow;
    return h;
}

void WeightedHistogram::reset() {
    mass_.assign(mass_.size(), 0.0);
    total_weight_ = 0.0;
    underflow_ = 0.0;
    overflow_ = 0.0;
}

WeightedHistogram::Checkpoint WeightedHistogram::checkpoint() const {
    return {edges_, mass_, total_weight_, underflow_, overflow_};
}

void WeightedHistogram::add(double value, double weight) {
    if (!(weight >= 0.0)) throw std::invalid_argument("histogram weight must be >= 0");
    if (value < edges_.front()) {
        underflow_ += weight;
        return;
    }
    if (value >= edges_.back()) {
        // The top edge itself still belongs to the last bin.
        if (value == edges_.back()) {
            mass_.back() += weight;
            total_weight_ += weight;
        } else {
            overflow_ += weight;
        }
        return;
    }
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    const std::size_t bin = static_cast<std::size_t>(it - edges_.begin()) - 1;
    mass_[bin] += weight;
    total_weight_ += weight;
}

void WeightedHistogram::merge(const WeightedHistogram& other) {
    if (edges_ != other.edges_) throw std::invalid_argument("histogram merge needs equal edges");
    for (std::size_t i = 0; i < mass_.size(); ++i) mass_[i] += other.mass_[i];
    total_weight_ += other.total_weight_;
    underflow_ += other.underflow_;
    overflow_ += other.overflow_;
}

std::vector<double> WeightedHistogram::density() const {
    std::vector<double> d(mass_.size(), 0.0);
    if (total_weight_ <= 0.0) return d;
    for (std::size_t i = 0; i < mass_.size(); ++i)
        d[i] = mass_[i] / (total_weight_ * (edges_[i + 1] - edges_[i]));
    return d;
}

double WeightedHistogram::quantile(double p) const {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile needs p in [0, 1]");
    if (total_weight_ <= 0.0) throw std::domain_error("quantile of an empty histogram");
    const double target = p * total_weight_;
    double cum = 0.0;
    for (std::size_t i = 0; i < mass_.size(); ++i) {
        if (cum + mass_[i] >= target) {
            const double frac = mass_[i] > 0.0 ? (target - cum) / mass_[i] : 0.0;
            return edges_[i] + frac * (edges_[i + 1] - edges_[i]);
        }
        cum += mass_[i];
    }
    return edges_.back();
}

WeightedHistogram radial_histogram(const std::vector<const Trace*>& traces,
                                   std::vector<double> edges, double r_scale) {
    if (traces.empty()) throw std::invalid_argument("radial_histogram needs at least one trace");
    WeightedHistogram h(std::move(edges));
    for (const Trace* tr : traces) {
        if (tr == nullptr) throw std::invalid_argument("radial_histogram: null trace");
        for (const TraceRow& row : tr->rows()) h.add(row.r * r_scale, row.dt_weight);
    }
    return h;
}

double ks_distance(const WeightedHistogram& hist,
                   const std::function<double(double)>& reference_cdf) {
    const double total = hist.total_weight();
    if (total <= 0.0) throw std::domain_error("ks_distance of an empty histogram");
    double sup = 0.0;
    double cum = 0.0;
    const auto& edges = hist.edges();
    const auto& mass = hist.mass();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i > 0) cum += mass[i - 1];
        sup = std::max(sup, std::fabs(cum / total - reference_cdf(edges[i])));
    }
    return sup;
}

}  // namespace sedsim
