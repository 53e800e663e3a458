// Configuration parsing, the canonical echo round trip, overrides, and
// cross-field validation.

#include <string>

#include <doctest.h>

#include "sedsim/config.hpp"
#include "sedsim/constants.hpp"
#include "sedsim/errors.hpp"

using namespace sedsim;

namespace {

SimConfig minimal() {
    SimConfig cfg;
    cfg.t_max_orbits = 5.0;
    return cfg;
}

}  // namespace

TEST_CASE("defaults pass validation once a run length is chosen") {
    CHECK_THROWS_AS(validate(SimConfig{}), ConfigError);  // no run length
    CHECK_NOTHROW(validate(minimal()));
    SimConfig both = minimal();
    both.t_max_t0 = 1.0;
    CHECK_THROWS_AS(validate(both), ConfigError);  // two run lengths
}

TEST_CASE("serialize/parse is a fixed point") {
    SimConfig cfg = minimal();
    cfg.Z = 3;
    cfg.seed = 123456789012345ull;
    cfg.forces = {true, true, true, false};
    cfg.field_model = FieldModel::dipole_1d;
    cfg.integrator = IntegratorKind::adaptive_rk4;
    cfg.adaptive_tol = 3.25e-11;
    cfg.initial.kind = InitialSpec::Kind::circular_scaled;
    cfg.initial.r0 = 1.0018;
    cfg.cutoff.kind = CutoffPolicy::Kind::moving;
    cfg.cutoff.floor = 0.75;
    cfg.cutoff.ceiling = 42.0;
    cfg.field.modes = 777;
    cfg.detectors.ionization_dwell_t0 = 9.5e3;
    cfg.output.trace_stride = 16;

    const std::string echo = serialize_config(cfg);
    const SimConfig back = parse_config_text(echo, "echo");
    CHECK(serialize_config(back) == echo);
    CHECK(back.Z == 3);
    CHECK(back.seed == cfg.seed);
    CHECK(back.forces.radiation_reaction);
    CHECK(!back.forces.field_magnetic);
    CHECK(back.integrator == IntegratorKind::adaptive_rk4);
    CHECK(back.adaptive_tol == cfg.adaptive_tol);
    CHECK(back.initial.kind == InitialSpec::Kind::circular_scaled);
    CHECK(back.initial.r0 == cfg.initial.r0);
    CHECK(back.cutoff.ceiling == 42.0);
    CHECK(back.output.trace_stride == 16);
}

TEST_CASE("parser reports the offending line and rejects unknown keys") {
    const std::string bad_key = "[sim]\nZ = 2\nzz_top = 1\n";
    try {
        parse_config_text(bad_key, "unit");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("unit:3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("[nope]\nx = 1\n", "unit"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("[sim]\nZ two\n", "unit"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("Z = 2\n", "unit"), ConfigError);  // key before section

    // comments and blank lines are fine, inline values trimmed
    const SimConfig ok = parse_config_text(
        "# leading comment\n[sim]\n\nZ = 4   \n; another comment\nseed = 7\nt_max_orbits = 2\n",
        "unit");
    CHECK(ok.Z == 4);
    CHECK(ok.seed == 7);
}

TEST_CASE("overrides hit section-qualified and unambiguous bare keys") {
    SimConfig cfg = minimal();
    apply_override(cfg, "sim.Z=5");
    CHECK(cfg.Z == 5);
    apply_override(cfg, "detectors.collapse_r_min=0.07");
    CHECK(cfg.detectors.collapse_r_min == 0.07);
    apply_override(cfg, "collapse_r_min=0.09");  // unique across sections
    CHECK(cfg.detectors.collapse_r_min == 0.09);
    apply_override(cfg, "sim.initial=circular(0.5)");
    CHECK(cfg.initial.kind == InitialSpec::Kind::circular);
    CHECK(cfg.initial.r0 == 0.5);
    apply_override(cfg, "sim.forces=coulomb, field_electric");
    CHECK(cfg.forces.coulomb);
    CHECK(!cfg.forces.radiation_reaction);
    CHECK(cfg.forces.field_electric);

    CHECK_THROWS_AS(apply_override(cfg, "sim.Z"), ConfigError);         // no value
    CHECK_THROWS_AS(apply_override(cfg, "sim.nope=1"), ConfigError);    // unknown key
    CHECK_THROWS_AS(apply_override(cfg, "bogus.Z=1"), ConfigError);     // unknown section
    CHECK_THROWS_AS(apply_override(cfg, "sim.Z=0"), ConfigError);       // range check
}

TEST_CASE("initial state forms parse and serialize") {
    SimConfig cfg = minimal();
    apply_override(cfg, "sim.initial=state(1, 0, 0, 0, 0.9, 0.1)");
    CHECK(cfg.initial.kind == InitialSpec::Kind::explicit_state);
    CHECK(cfg.initial.state.r.x == 1.0);
    CHECK(cfg.initial.state.v.z == 0.1);
    const SimConfig back = parse_config_text(serialize_config(cfg), "echo");
    CHECK(back.initial.state.v.y == 0.9);

    CHECK_THROWS_AS(apply_override(cfg, "sim.initial=circular(-1)"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "sim.initial=state(1,2)"), ConfigError);
    CHECK_THROWS_AS(apply_override(cfg, "sim.initial=spiral(1)"), ConfigError);
}

TEST_CASE("axial wavelength window sets the default fixed band") {
    SimConfig cfg = minimal();
    cfg.field_model = FieldModel::axial_plane_wave;
    cfg.field.lambda_min_A = 0.1;
    cfg.field.lambda_max_A = 900.0;
    const auto [lo, hi] = resolved_fixed_band(cfg);
    // omega = 2 pi / (alpha lambda); 900 A is the low edge, 0.1 A the high
    const double ang = 1e-10 / Constants::au_length_si;
    CHECK(lo == doctest::Approx(kTwoPi / (Constants::alpha * 900.0 * ang)).epsilon(1e-12));
    CHECK(hi == doctest::Approx(kTwoPi / (Constants::alpha * 0.1 * ang)).epsilon(1e-12));
    CHECK(lo == doctest::Approx(0.50626).epsilon(1e-4));
    CHECK(hi == doctest::Approx(4556.3).epsilon(1e-4));

    // explicit band wins over the wavelength default
    cfg.cutoff.omega_min = 1.0;
    cfg.cutoff.omega_max = 2.0;
    const auto [lo2, hi2] = resolved_fixed_band(cfg);
    CHECK(lo2 == 1.0);
    CHECK(hi2 == 2.0);
}

TEST_CASE("field spec converts box dimensions to atomic units") {
    SimConfig cfg = minimal();
    cfg.field_model = FieldModel::axial_plane_wave;
    cfg.seed = 99;
    cfg.field.box_lx_A = 27.0;
    cfg.field.box_lz_cm = 0.41;
    const FieldSpec spec = field_spec(cfg);
    CHECK(spec.rng.seed == 99);
    CHECK(spec.box_lx == doctest::Approx(27.0e-10 / Constants::au_length_si).epsilon(1e-12));
    CHECK(spec.box_lz == doctest::Approx(0.41e-2 / Constants::au_length_si).epsilon(1e-12));
    CHECK(spec.model == FieldModel::axial_plane_wave);
}

TEST_CASE("cross-field validation catches broken setups") {
    SimConfig cfg = minimal();
    cfg.field_model = FieldModel::dipole_1d;
    cfg.cutoff.kind = CutoffPolicy::Kind::fixed;
    cfg.cutoff.omega_min = 2.0;
    cfg.cutoff.omega_max = 1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);

    SimConfig mv = minimal();
    mv.field_model = FieldModel::dipole_1d;
    mv.cutoff.kind = CutoffPolicy::Kind::moving;
    mv.cutoff.floor = 5.0;
    mv.cutoff.ceiling = 1.0;
    CHECK_THROWS_AS(validate(mv), ConfigError);

    SimConfig lam = minimal();
    lam.field_model = FieldModel::axial_plane_wave;
    lam.field.lambda_min_A = 10.0;
    lam.field.lambda_max_A = 1.0;
    CHECK_THROWS_AS(validate(lam), ConfigError);
}
