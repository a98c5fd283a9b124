#include <doctest.h>

#include "fbm/diagnostics.hpp"
#include "fbm/scenarios.hpp"

using namespace fbm;

TEST_CASE("regime names round-trip") {
  for (Regime r : {Regime::weak_strong_A2, Regime::region_B_i, Regime::region_B_ii, Regime::region_B_iii,
                   Regime::single_species, Regime::problem_Q}) {
    CHECK(regime_from_string(to_string(r)) == r);
  }
  CHECK_THROWS_AS(regime_from_string("region_C"), Error);
}

TEST_CASE("weak-strong preset is in A2 with generous data") {
  const ScenarioSpec spec = build_preset(Regime::weak_strong_A2);
  CHECK_NOTHROW(spec.validate());
  const RegimeReport report = validate_regime(spec.params);
  CHECK(report.regime == "A2");
  CHECK(*report.margin < 0.0);
  CHECK(spec.recipe.x0 >= 20.0 * std::max(1.0, 1.0 / *report.c_star));
  const InitialData init = build_initial_data(spec);
  CHECK_NOTHROW(init.validate());
  CHECK(init.s2_0 == doctest::Approx(spec.recipe.x0 + spec.recipe.L + spec.recipe.pad));
}

TEST_CASE("two-speed initial data builder") {
  ModelParams p;
  const double mid = trichotomy_thresholds(p).s_star_mid;
  const InitialData init = build_corollary1_data(p, 1.1 * mid, 20, 20);
  CHECK(init.v0(0) == 1.0);
  CHECK(init.v0.maxCoeff() <= 1.0);
  CHECK_THROWS_AS(build_corollary1_data(p, 0.9 * mid, 20, 20), Error);
  CHECK_THROWS_AS(build_corollary1_data(p, 1.1 * mid, 20, 20, 1.5), Error);
}

TEST_CASE("trichotomy presets sit in region B") {
  ModelParams p;
  const TrichotomyThresholds th = trichotomy_thresholds(p);
  for (const char* which : {"i", "ii", "iii"}) {
    const ScenarioSpec spec = build_trichotomy_preset(which, p);
    CHECK_NOTHROW(spec.validate());
    CHECK(check_region_B(spec.params).positive);
  }
  CHECK(build_trichotomy_preset("i", p).recipe.s2_0 < th.s_star_v);
  CHECK(build_trichotomy_preset("ii", p).recipe.s2_0 >= th.s_star_v);
  CHECK(build_trichotomy_preset("iii", p).recipe.s1_0 >= th.s_star_mid);
  CHECK_THROWS_AS(build_trichotomy_preset("iv", p), Error);
}

TEST_CASE("preset (iii) classifies as u spreads, v vanishes") {
  const ScenarioSpec spec = build_preset(Regime::region_B_iii);
  const Outcome o = classify_outcome(run_P(spec.params, build_initial_data(spec), spec.numerics));
  CHECK(o.u.status == Status::Spreads);
  CHECK(o.v.status == Status::Vanishes);
}

TEST_CASE("regime validation") {
  ModelParams p;
  p.k = 1.2;
  const RegimeReport report = validate_regime(p);
  CHECK_FALSE(report.weak_strong);
  CHECK(report.regime == "not_weak_strong");
  ScenarioSpec spec = build_preset(Regime::weak_strong_A2);
  spec.params.k = 1.2;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = build_preset(Regime::weak_strong_A2);
  spec.regime = Regime::region_B_i;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("single-species and resident presets") {
  const ScenarioSpec single = build_preset(Regime::single_species);
  CHECK(build_initial_state(single).V.maxCoeff() == 0.0);
  const ScenarioSpec q = build_preset(Regime::problem_Q);
  const ProblemQData data = build_Q_data(q);
  CHECK_NOTHROW(data.validate());
  CHECK(data.h0 >= trichotomy_thresholds(q.params).s_star_mid);
}
