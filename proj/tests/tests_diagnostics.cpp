// Trace decimation, weighted histograms, the KS statistic, and the three
// event detectors, including streaming-vs-whole-trace equality.

#include <cmath>
#include <vector>

#include <doctest.h>

#include "sedsim/detectors.hpp"
#include "sedsim/rng.hpp"
#include "sedsim/trace.hpp"

using namespace sedsim;

namespace {

TraceRow row_at(double t, double r, double energy, double l, double dt) {
    TraceRow row;
    row.t = t;
    row.r = r;
    row.energy = energy;
    row.ang_mom = l;
    row.ecc = 0.1;
    row.dt_weight = dt;
    return row;
}

// synthetic wandering trace with both calm and wild stretches
Trace synthetic_trace(std::uint64_t seed, int n, int stride = 1) {
    Trace tr(stride);
    const double dt = 0.25;
    for (int i = 0; i < n; ++i) {
        const double t = (i + 1) * dt;
        const double wob = gaussian_variate(seed, 4, i);
        const double r = 1.0 + 0.8 * std::sin(0.03 * i) + 0.05 * wob;
        const double e = -0.5 + 0.45 * std::sin(0.011 * i + 1.0) + 0.02 * wob;
        const double l = 0.9 + 0.5 * std::sin(0.007 * i + 2.0);
        tr.record(row_at(t, std::abs(r) + 0.01, e, std::abs(l), dt));
    }
    return tr;
}

}  // namespace

TEST_CASE("trace decimation conserves total weight and sample identity") {
    Trace full(1);
    Trace dec(4);
    for (int i = 0; i < 10; ++i) {
        const TraceRow row = row_at(0.1 * (i + 1), 1.0 + i, -0.5, 1.0, 0.1);
        full.record(row);
        dec.record(row);
    }
    dec.flush();
    CHECK(full.rows().size() == 10);
    CHECK(dec.rows().size() == 3);  // two groups of 4, one flushed group of 2
    CHECK(dec.total_weight() == doctest::Approx(full.total_weight()).epsilon(1e-15));
    double sum = 0.0;
    for (const TraceRow& row : dec.rows()) sum += row.dt_weight;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
    // a kept row carries the first sample of its group
    CHECK(dec.rows()[0].r == doctest::Approx(1.0));
    CHECK(dec.rows()[1].r == doctest::Approx(5.0));

    CHECK_THROWS(full.record(row_at(0.05, 1.0, -0.5, 1.0, 0.1)));  // time moved backwards
    CHECK_THROWS(full.record(row_at(2.0, 1.0, -0.5, 1.0, 0.0)));   // zero weight
    CHECK_THROWS(Trace(0));
}

TEST_CASE("trace checkpoint restores mid-group state bitwise") {
    Trace a(3);
    for (int i = 0; i < 7; ++i) a.record(row_at(i + 1.0, 2.0 + i, -0.4, 1.1, 1.0));
    Trace b = Trace::restore(a.checkpoint());
    for (int i = 7; i < 12; ++i) {
        const TraceRow row = row_at(i + 1.0, 2.0 + i, -0.4, 1.1, 1.0);
        a.record(row);
        b.record(row);
    }
    a.flush();
    b.flush();
    REQUIRE(a.rows().size() == b.rows().size());
    for (std::size_t i = 0; i < a.rows().size(); ++i) {
        CHECK(a.rows()[i].t == b.rows()[i].t);
        CHECK(a.rows()[i].dt_weight == b.rows()[i].dt_weight);
    }
}

TEST_CASE("weighted histogram: placement, edges, out-of-range bookkeeping") {
    WeightedHistogram h = WeightedHistogram::uniform(0.0, 10.0, 5);
    h.add(0.0, 1.0);    // first bin, lower edge inclusive
    h.add(3.99, 2.0);   // second bin
    h.add(10.0, 0.5);   // top edge goes to the last bin
    h.add(-0.1, 7.0);   // underflow
    h.add(11.0, 3.0);   // overflow

    CHECK(h.total_weight() == doctest::Approx(3.5));
    CHECK(h.underflow() == doctest::Approx(7.0));
    CHECK(h.overflow() == doctest::Approx(3.0));
    CHECK(h.mass()[0] == doctest::Approx(1.0));
    CHECK(h.mass()[1] == doctest::Approx(2.0));
    CHECK(h.mass()[4] == doctest::Approx(0.5));

    const std::vector<double> d = h.density();
    CHECK(d[0] == doctest::Approx(1.0 / (3.5 * 2.0)));
    double integral = 0.0;
    for (double v : d) integral += v * 2.0;
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS(WeightedHistogram(std::vector<double>{1.0}));
    CHECK_THROWS(WeightedHistogram(std::vector<double>{1.0, 1.0}));
}

TEST_CASE("histogram merge requires identical edges and adds mass") {
    WeightedHistogram a = WeightedHistogram::uniform(0.0, 1.0, 4);
    WeightedHistogram b = WeightedHistogram::uniform(0.0, 1.0, 4);
    a.add(0.1, 1.0);
    b.add(0.1, 2.0);
    b.add(0.9, 1.0);
    b.add(-1.0, 5.0);
    a.merge(b);
    CHECK(a.mass()[0] == doctest::Approx(3.0));
    CHECK(a.mass()[3] == doctest::Approx(1.0));
    CHECK(a.total_weight() == doctest::Approx(4.0));
    CHECK(a.underflow() == doctest::Approx(5.0));

    WeightedHistogram c = WeightedHistogram::uniform(0.0, 2.0, 4);
    CHECK_THROWS(a.merge(c));
}

TEST_CASE("histogram quantiles interpolate within bins") {
    WeightedHistogram h = WeightedHistogram::uniform(0.0, 4.0, 4);
    h.add(0.5, 1.0);
    h.add(1.5, 1.0);
    h.add(2.5, 1.0);
    h.add(3.5, 1.0);
    CHECK(h.quantile(0.0) == doctest::Approx(0.0));
    CHECK(h.quantile(0.5) == doctest::Approx(2.0));
    CHECK(h.quantile(0.25) == doctest::Approx(1.0));
    CHECK(h.quantile(1.0) == doctest::Approx(4.0));
    CHECK(h.quantile(0.125) == doctest::Approx(0.5));

    WeightedHistogram empty = WeightedHistogram::uniform(0.0, 1.0, 2);
    CHECK_THROWS(empty.quantile(0.5));
}

TEST_CASE("ks distance against a point mass and against the matching cdf") {
    WeightedHistogram h = WeightedHistogram::uniform(0.0, 1.0, 10);
    h.add(0.35, 1.0);  // all mass in [0.3, 0.4)
    // step CDF jumping at 0.3: empirical mass sits exactly one bin later
    const double d = ks_distance(h, [](double x) { return x >= 0.3 ? 1.0 : 0.0; });
    CHECK(d == doctest::Approx(1.0));  // at edge 0.4^-... evaluated at 0.3: ref 1, emp 0

    // uniform mass vs uniform CDF: small distance from binning only
    WeightedHistogram u = WeightedHistogram::uniform(0.0, 1.0, 100);
    for (int i = 0; i < 100; ++i) u.add((i + 0.5) / 100.0, 1.0);
    CHECK(ks_distance(u, [](double x) { return x; }) <= 0.5 / 100.0 + 1e-12);
}

TEST_CASE("radial histogram pools traces with a unit scale") {
    Trace a(1), b(1);
    a.record(row_at(1.0, 0.5, -0.5, 1.0, 2.0));
    b.record(row_at(1.0, 1.5, -0.5, 1.0, 1.0));
    const WeightedHistogram h =
        radial_histogram({&a, &b}, WeightedHistogram::uniform(0.0, 4.0, 4).edges(), 2.0);
    CHECK(h.total_weight() == doctest::Approx(3.0));
    CHECK(h.mass()[1] == doctest::Approx(2.0));  // 0.5 * 2 = 1.0 in [1, 2)
    CHECK(h.mass()[3] == doctest::Approx(1.0));  // 1.5 * 2 = 3.0 in [3, 4)
}

TEST_CASE("ionization detector: dwell semantics") {
    // threshold 0, dwell 3: excursions shorter than 3 in observed time never
    // fire; a run cut off by the end of data never fires
    IonizationDetector det(0.0, 3.0);
    CHECK(!det.update(1.0, 0.5));
    CHECK(!det.update(2.0, 0.5));
    CHECK(!det.update(3.0, -0.5));  // closed after 2 units
    CHECK(!det.update(4.0, 0.5));   // reopen
    CHECK(!det.update(6.0, 0.5));
    CHECK(det.update(7.0, 0.5));    // observed length 3 reached
    CHECK(det.t_event() == doctest::Approx(4.0));  // fires at the run start
    CHECK(det.update(8.0, -1.0));   // stays fired

    IonizationDetector cut(0.0, 5.0);
    cut.update(1.0, 1.0);
    cut.update(2.0, 1.0);
    CHECK(!cut.fired());
    CHECK(cut.in_open_run());
    CHECK(cut.open_run_start() == doctest::Approx(1.0));
}

TEST_CASE("collapse detector fires at the first crossing only") {
    CollapseDetector det(0.05);
    CHECK(!det.update(1.0, 0.2));
    CHECK(!det.update(2.0, 0.05));  // boundary is not inside
    CHECK(det.update(3.0, 0.049));
    CHECK(det.t_event() == doctest::Approx(3.0));
    det.update(4.0, 1.0);
    CHECK(det.t_event() == doctest::Approx(3.0));
}

TEST_CASE("critical-L monitor: fractions and the joint-band flag") {
    CriticalLMonitor mon(0.5, -0.1);
    mon.update(1.0, 0.8, -0.5, 1.0);  // above L
    mon.update(2.0, 0.4, -0.5, 1.0);  // below L, deep energy: no flag
    CHECK(!mon.flagged());
    mon.update(3.0, 0.4, -0.05, 2.0);  // below L inside the band: flag
    CHECK(mon.flagged());
    CHECK(mon.t_first() == doctest::Approx(3.0));
    mon.update(4.0, 0.9, -0.05, 1.0);
    CHECK(mon.fraction_below() == doctest::Approx(3.0 / 5.0));
    CHECK(mon.fraction_below_in_band() == doctest::Approx(2.0 / 5.0));
    const DetectorVerdict v = mon.verdict();
    CHECK(v.kind == DetectorVerdict::Kind::critical_L);
    CHECK(v.fraction_below == doctest::Approx(0.6));
}

TEST_CASE("streaming detectors equal the whole-trace scans on synthetic data") {
    for (const std::uint64_t seed : {1ull, 2ull, 3ull, 9ull}) {
        const Trace tr = synthetic_trace(seed, 4000);

        IonizationDetector ion(-0.15, 40.0);
        CollapseDetector col(0.35);
        CriticalLMonitor mon(0.55, -0.2);
        for (const TraceRow& row : tr.rows()) {
            ion.update(row.t, row.energy);
            col.update(row.t, row.r);
            mon.update(row.t, row.ang_mom, row.energy, row.dt_weight);
        }

        const DetectorVerdict vi = detect_ionization(tr, -0.15, 40.0);
        const DetectorVerdict vc = detect_collapse(tr, 0.35);
        const DetectorVerdict vm = critical_L_monitor(tr, 0.55, -0.2);

        CHECK((vi.kind == DetectorVerdict::Kind::ionization) == ion.fired());
        if (ion.fired()) CHECK(vi.t_event == ion.t_event());
        CHECK((vc.kind == DetectorVerdict::Kind::collapse) == col.fired());
        if (col.fired()) CHECK(vc.t_event == col.t_event());
        CHECK(vm.fraction_below == doctest::Approx(mon.fraction_below()).epsilon(1e-15));
        CHECK(vm.fraction_below_in_band ==
              doctest::Approx(mon.fraction_below_in_band()).epsilon(1e-15));
    }
}

TEST_CASE("detector checkpoints restore the open-run state") {
    IonizationDetector a(0.0, 10.0);
    a.update(1.0, 1.0);
    a.update(2.0, 1.0);
    IonizationDetector b(0.0, 10.0);
    b.restore(a.checkpoint());
    a.update(11.0, 1.0);
    b.update(11.0, 1.0);
    CHECK(a.fired() == b.fired());
    CHECK(a.t_event() == b.t_event());

    CriticalLMonitor ma(0.5, -0.1);
    ma.update(1.0, 0.4, -0.05, 1.0);
    CriticalLMonitor mb(0.5, -0.1);
    mb.restore(ma.checkpoint());
    ma.update(2.0, 0.9, -0.5, 1.0);
    mb.update(2.0, 0.9, -0.5, 1.0);
    CHECK(ma.fraction_below() == mb.fraction_below());
    CHECK(ma.t_first() == mb.t_first());
}
