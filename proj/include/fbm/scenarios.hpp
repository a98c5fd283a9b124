#pragma once

#include <optional>
#include <string>

#include "fbm/core.hpp"

namespace fbm {

enum class Regime {
  weak_strong_A2,
  region_B_i,
  region_B_ii,
  region_B_iii,
  single_species,
  problem_Q,
};

const char* to_string(Regime regime);
/// Throws InvalidConfig on an unknown name.
Regime regime_from_string(const std::string& name);

/// Initial-data recipe.  Which fields matter depends on the regime.
struct Recipe {
  double s1_0 = 0.0;
  double s2_0 = 0.0;  ///< bump support for v; ignored by weak_strong_A2 (x0 + L + pad)
  double x0 = 0.0;    ///< v0 >= 1 on [x0, x0 + L]
  double L = 0.0;
  double pad = 10.0;  ///< width of v0's fall-off past x0 + L
  double u_amplitude = 1.0;
  double v_amplitude = 1.0;
  double h0 = 0.0;        ///< problem_Q initial front
  double L_domain = 0.0;  ///< problem_Q resident domain
  double v_level = 1.0;   ///< problem_Q resident level
  int samples = 4001;     ///< uniform samples per initial profile
};

struct ScenarioSpec {
  ModelParams params;
  Regime regime = Regime::weak_strong_A2;
  Recipe recipe;
  NumericsConfig numerics;  ///< suggested numerics for the preset

  /// Regime conditions: weak-strong tags need 0 < k < 1 < h, weak_strong_A2 a negative
  /// region-B margin and region_B_* a positive one.  Throws ConditionViolated.
  void validate() const;
};

/// Raised-cosine bump amplitude * (1 + cos(pi r / front)) / 2 at `samples` uniform points of
/// [0, front]; the values do not depend on the front itself.
Vector raised_cosine(double amplitude, int samples);

/// u0: raised cosine of amplitude <= 1 on [0, s1_0]; v0 = 1 on [0, x0 + L] falling to 0 over
/// [x0 + L, x0 + L + pad] by a C^2 smoothstep.  Requires s1_0 >= R* sqrt(d / (r (1 - k))).
InitialData build_corollary1_data(const ModelParams& params, double s1_0, double x0, double L,
                                  double u_amplitude = 1.0, double pad = 10.0, int samples = 4001);

/// The three outcome presets of the region-B trichotomy ('i', 'ii', 'iii').
ScenarioSpec build_trichotomy_preset(const std::string& which, const ModelParams& params_base);

/// u bump on [0, h0]; v0 = v_background_level on [0, L_domain].
ProblemQData build_Q_data(const ModelParams& params, double h0, double v_background_level,
                          double L_domain, double u_amplitude = 1.0, int samples = 4001);

struct RegimeReport {
  bool weak_strong = false;
  std::optional<double> c_star;
  std::optional<double> s_star;
  std::optional<double> margin;   ///< c*_mu1 - s*_mu2
  std::string regime;             ///< "A2", "A3", "boundary" or "not_weak_strong"
  bool a2 = false;
  double kpp_speed_bound = 0.0;   ///< 2 sqrt(rd)
  bool kpp_bound_below_s_star = false;  ///< 2 sqrt(rd) <= s*_mu2, sufficient for A2
};

/// |margin| below this is reported as "boundary".
inline constexpr double kRegimeBoundaryTol = 1e-6;

RegimeReport validate_regime(const ModelParams& params);

/// Named presets with their default recipe and numerics.
ScenarioSpec build_preset(Regime regime);

/// Initial data for the non-Q regimes.  single_species returns a state with v identically 0.
SimState build_initial_state(const ScenarioSpec& spec);
InitialData build_initial_data(const ScenarioSpec& spec);
ProblemQData build_Q_data(const ScenarioSpec& spec);

}  // namespace fbm
