#pragma once

#include <string>
#include <vector>

#include "fbm/core.hpp"

namespace fbm {

enum class Species { U, V };
const char* to_string(Species species);

struct SpeedFit {
  double slope = 0.0;
  double intercept = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double max_residual = 0.0;
  int points = 0;
};

/// Least-squares line through the points with t in [t_hi - fraction (t_hi - t_first), t_hi].
/// fraction must lie in (0, 0.5] so the window never starts before t_hi / 2.
SpeedFit fit_front_speed(const std::vector<double>& t, const std::vector<double>& s,
                         double window_fraction = 0.5);
SpeedFit fit_front_speed(const Trajectory& traj, Species species, double window_fraction = 0.5);

struct SpeedReport {
  Species species = Species::U;
  SpeedFit fit;
  double predicted = 0.0;
  double rel_err = 0.0;
};

SpeedReport speed_report(const Trajectory& traj, Species species, double predicted,
                         double window_fraction = 0.5);

struct SegregationMetrics {
  double eps = 0.0;
  double t = 0.0;
  double u_deviation_inner = 0.0;  ///< sup |u - 1| on [0, (c - eps) t]
  double v_deviation_band = 0.0;   ///< sup |v - 1| on [(c + eps) t, (s - eps) t]
  double v_inner = 0.0;            ///< sup v on [0, (c - eps) t]
};

/// Exact sups of the interpolated profiles over each band; throws EmptyBand.
SegregationMetrics segregation_metrics(const SimState& snapshot, double c_hat, double s_hat,
                                       double eps = 0.1);

enum class Status { Spreads, Vanishes, Undecided };
const char* to_string(Status status);

struct SpeciesOutcome {
  Status status = Status::Undecided;
  double initial_front = 0.0;
  double final_front = 0.0;
  double front_growth = 0.0;    ///< growth over the trailing half of the horizon
  double final_sup = 0.0;
  double min_plateau = 0.0;     ///< shortest delta-plateau over all snapshots
};

struct Outcome {
  SpeciesOutcome u;
  SpeciesOutcome v;
};

struct ClassifierConfig {
  double delta = 0.1;
  double stall_tol = 1e-4;  ///< relative to the initial front
  double sup_tol = 1e-3;
  double spread_factor = 3.0;
};

Outcome classify_outcome(const Trajectory& traj, const ClassifierConfig& config = {});

/// Length of the longest run of nodes with value >= delta, in physical units.
double plateau_length(const Vector& profile, double front, double delta);

struct TrichotomyThresholds {
  double s_star_low = 0.0;  ///< R* sqrt(d / r)
  double s_star_mid = 0.0;  ///< R* sqrt(d / (r (1 - k)))
  double s_star_v = 0.0;    ///< R*
};

TrichotomyThresholds trichotomy_thresholds(const ModelParams& params);

struct RegionBCheck {
  double c_star = 0.0;
  double s_star = 0.0;
  double margin = 0.0;  ///< c*_mu1 - s*_mu2
  bool positive = false;
};

RegionBCheck check_region_B(const ModelParams& params, double tol = 1e-8);

}  // namespace fbm
