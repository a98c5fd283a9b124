#include "fbm/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbm/diagnostics.hpp"
#include "fbm/semiwave.hpp"

namespace fbm {

namespace {

constexpr std::pair<Regime, const char*> kRegimeNames[] = {
    {Regime::weak_strong_A2, "weak_strong_A2"}, {Regime::region_B_i, "region_B_i"},
    {Regime::region_B_ii, "region_B_ii"},       {Regime::region_B_iii, "region_B_iii"},
    {Regime::single_species, "single_species"}, {Regime::problem_Q, "problem_Q"},
};

ModelParams base_params() {
  ModelParams p;
  p.d = 1.0;
  p.r = 1.0;
  p.h = 2.0;
  p.k = 0.5;
  p.mu1 = 1.0;
  p.mu2 = 1.0;
  p.N = 1;
  return p;
}

// 1 - smoothstep, with vanishing first and second derivatives at both ends.
double falloff(double x) {
  if (x <= 0.0) return 1.0;
  if (x >= 1.0) return 0.0;
  return 1.0 - x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

bool is_region_B(Regime regime) {
  return regime == Regime::region_B_i || regime == Regime::region_B_ii ||
         regime == Regime::region_B_iii;
}

}  // namespace

const char* to_string(Regime regime) {
  for (const auto& [r, name] : kRegimeNames) {
    if (r == regime) return name;
  }
  return "unknown";
}

Regime regime_from_string(const std::string& name) {
  for (const auto& [r, n] : kRegimeNames) {
    if (name == n) return r;
  }
  throw Error(ErrorKind::InvalidConfig, "unknown preset '" + name + "'");
}

Vector raised_cosine(double amplitude, int samples) {
  Vector out(samples);
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / (samples - 1);
    out(i) = 0.5 * amplitude * (1.0 + std::cos(M_PI * x));
  }
  out(samples - 1) = 0.0;
  return out;
}

InitialData build_corollary1_data(const ModelParams& params, double s1_0, double x0, double L,
                                  double u_amplitude, double pad, int samples) {
  params.validate();
  const TrichotomyThresholds th = trichotomy_thresholds(params);
  if (s1_0 < th.s_star_mid) {
    throw Error(ErrorKind::ConditionViolated,
                "s1_0 below R* sqrt(d / (r (1 - k))) = " + std::to_string(th.s_star_mid));
  }
  if (u_amplitude > 1.0) throw Error(ErrorKind::ConditionViolated, "u0 amplitude exceeds 1");
  if (!(x0 > 0.0 && L > 0.0 && pad > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "x0, L and pad must be positive");
  }
  InitialData init;
  init.s1_0 = s1_0;
  init.s2_0 = x0 + L + pad;
  init.u0 = raised_cosine(u_amplitude, samples);
  init.v0.resize(samples);
  for (int i = 0; i < samples; ++i) {
    const double r = init.s2_0 * static_cast<double>(i) / (samples - 1);
    init.v0(i) = falloff((r - (x0 + L)) / pad);
  }
  init.v0(samples - 1) = 0.0;
  init.validate();
  return init;
}

ScenarioSpec build_trichotomy_preset(const std::string& which, const ModelParams& params_base) {
  params_base.validate();
  if (!params_base.weak_strong()) {
    throw Error(ErrorKind::ConditionViolated, "trichotomy presets need 0 < k < 1 < h");
  }
  ScenarioSpec spec;
  spec.params = params_base;
  // (i) and (ii) use half the base mu1.
  if (which == "i" || which == "ii") spec.params.mu1 *= 0.5;
  const TrichotomyThresholds th = trichotomy_thresholds(params_base);
  if (which == "i") {
    spec.regime = Regime::region_B_i;
    spec.recipe.s1_0 = 0.5 * th.s_star_low;
    spec.recipe.s2_0 = 0.5 * th.s_star_v;
  } else if (which == "ii") {
    spec.regime = Regime::region_B_ii;
    spec.recipe.s1_0 = 0.5 * th.s_star_low;
    spec.recipe.s2_0 = 1.5 * th.s_star_v;
  } else if (which == "iii") {
    spec.regime = Regime::region_B_iii;
    spec.recipe.s1_0 = 1.5 * th.s_star_mid;
    spec.recipe.s2_0 = 0.5 * th.s_star_v;
  } else {
    throw Error(ErrorKind::InvalidSpec, "trichotomy preset must be i, ii or iii");
  }

  // c* does not depend on mu2; shrink mu2 until (mu1, mu2) lands in region B.
  const double c_star = compute_c_star(spec.params);
  bool reached = false;
  for (int it = 0; it < 40; ++it) {
    if (c_star - compute_s_star(1.0, 1.0, 1.0, spec.params.mu2) > 0.0) {
      reached = true;
      break;
    }
    spec.params.mu2 *= 0.5;
  }
  if (!reached) throw Error(ErrorKind::PresetUnreachable, "mu2 scaling did not reach region B");

  spec.numerics.n_cells = 256;
  spec.numerics.dt = 0.01;
  spec.numerics.t_end = 120.0;
  spec.numerics.snapshot_every = 200;
  return spec;
}

ProblemQData build_Q_data(const ModelParams& params, double h0, double v_background_level,
                          double L_domain, double u_amplitude, int samples) {
  params.validate();
  if (!(h0 > 0.0)) throw Error(ErrorKind::InvalidSpec, "h0 must be positive");
  if (!(v_background_level > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "v background level must be positive");
  }
  ProblemQData data;
  data.h0 = h0;
  data.u0 = raised_cosine(u_amplitude, samples);
  data.L_domain = L_domain;
  data.v0 = Vector::Constant(samples, v_background_level);
  data.validate();
  return data;
}

void ScenarioSpec::validate() const {
  params.validate();
  if (regime == Regime::single_species) return;
  if (!params.weak_strong()) {
    throw Error(ErrorKind::ConditionViolated, "weak-strong competition requires 0 < k < 1 < h");
  }
  if (regime == Regime::weak_strong_A2 || is_region_B(regime)) {
    const RegionBCheck check = check_region_B(params);
    if (regime == Regime::weak_strong_A2 && !(check.margin < 0.0)) {
      throw Error(ErrorKind::ConditionViolated, "weak_strong_A2 needs c*_mu1 < s*_mu2");
    }
    if (is_region_B(regime) && !(check.margin > 0.0)) {
      throw Error(ErrorKind::ConditionViolated, "region B presets need c*_mu1 > s*_mu2");
    }
  }
}

RegimeReport validate_regime(const ModelParams& params) {
  params.validate();
  RegimeReport report;
  report.weak_strong = params.weak_strong();
  report.kpp_speed_bound = 2.0 * std::sqrt(params.r * params.d);
  report.s_star = compute_s_star(1.0, 1.0, 1.0, params.mu2);
  report.kpp_bound_below_s_star = report.kpp_speed_bound <= *report.s_star;
  if (!report.weak_strong) {
    report.regime = "not_weak_strong";
    return report;
  }
  report.c_star = compute_c_star(params);
  report.margin = *report.c_star - *report.s_star;
  if (std::abs(*report.margin) < kRegimeBoundaryTol) {
    report.regime = "boundary";
  } else {
    report.a2 = *report.margin < 0.0;
    report.regime = report.a2 ? "A2" : "A3";
  }
  return report;
}

ScenarioSpec build_preset(Regime regime) {
  ModelParams params = base_params();
  switch (regime) {
    case Regime::region_B_i: return build_trichotomy_preset("i", params);
    case Regime::region_B_ii: return build_trichotomy_preset("ii", params);
    case Regime::region_B_iii: return build_trichotomy_preset("iii", params);
    default: break;
  }
  ScenarioSpec spec;
  spec.regime = regime;
  const TrichotomyThresholds th = trichotomy_thresholds(params);
  if (regime == Regime::weak_strong_A2) {
    params.mu2 = 5.0;
    spec.params = params;
    const double c_star = compute_c_star(params);
    spec.recipe.s1_0 = 1.2 * th.s_star_mid;
    spec.recipe.x0 = 20.0 * std::max(1.0, 1.0 / c_star);
    spec.recipe.L = spec.recipe.x0;
    spec.recipe.pad = 10.0;
    spec.recipe.s2_0 = spec.recipe.x0 + spec.recipe.L + spec.recipe.pad;
    spec.numerics.n_cells = 2000;
    spec.numerics.dt = 0.01;
    spec.numerics.t_end = 200.0;
    spec.numerics.snapshot_every = 2000;
  } else if (regime == Regime::single_species) {
    spec.params = params;
    spec.recipe.s1_0 = 1.5 * th.s_star_low;
    spec.recipe.s2_0 = 1.0;
    spec.recipe.v_amplitude = 0.0;
    spec.numerics.n_cells = 512;
    spec.numerics.dt = 0.01;
    spec.numerics.t_end = 60.0;
    spec.numerics.snapshot_every = 500;
  } else {
    spec.params = params;
    spec.recipe.h0 = 1.5 * th.s_star_mid;
    spec.recipe.L_domain = 200.0;
    spec.recipe.v_level = 1.0;
    spec.numerics.n_cells = 2000;
    spec.numerics.dt = 0.01;
    spec.numerics.t_end = 400.0;
    spec.numerics.snapshot_every = 4000;
  }
  return spec;
}

InitialData build_initial_data(const ScenarioSpec& spec) {
  const Recipe& rc = spec.recipe;
  switch (spec.regime) {
    case Regime::weak_strong_A2:
      return build_corollary1_data(spec.params, rc.s1_0, rc.x0, rc.L, rc.u_amplitude, rc.pad,
                                   rc.samples);
    case Regime::region_B_i:
    case Regime::region_B_ii:
    case Regime::region_B_iii: {
      InitialData init;
      init.s1_0 = rc.s1_0;
      init.s2_0 = rc.s2_0;
      init.u0 = raised_cosine(rc.u_amplitude, rc.samples);
      init.v0 = raised_cosine(rc.v_amplitude, rc.samples);
      init.validate();
      return init;
    }
    default:
      throw Error(ErrorKind::InvalidSpec,
                  std::string("no two-species initial data for preset ") + to_string(spec.regime));
  }
}

SimState build_initial_state(const ScenarioSpec& spec) {
  if (spec.regime != Regime::single_species) {
    return initial_state(build_initial_data(spec), spec.numerics.n_cells);
  }
  const Recipe& rc = spec.recipe;
  InitialData init;
  init.s1_0 = rc.s1_0;
  init.s2_0 = rc.s2_0 > 0.0 ? rc.s2_0 : 1.0;
  init.u0 = raised_cosine(rc.u_amplitude, rc.samples);
  init.v0 = Vector::Zero(rc.samples);
  SimState state = initial_state(init, spec.numerics.n_cells);
  state.V.setZero();
  return state;
}

ProblemQData build_Q_data(const ScenarioSpec& spec) {
  const Recipe& rc = spec.recipe;
  return build_Q_data(spec.params, rc.h0, rc.v_level, rc.L_domain, rc.u_amplitude, rc.samples);
}

}  // namespace fbm
