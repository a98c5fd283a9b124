#include "fbm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fbm/semiwave.hpp"

namespace fbm {

const char* to_string(Species species) { return species == Species::U ? "u" : "v"; }

const char* to_string(Status status) {
  switch (status) {
    case Status::Spreads: return "spreads";
    case Status::Vanishes: return "vanishes";
    case Status::Undecided: return "undecided";
  }
  return "undecided";
}

SpeedFit fit_front_speed(const std::vector<double>& t, const std::vector<double>& s,
                         double window_fraction) {
  if (t.size() != s.size() || t.empty()) {
    throw Error(ErrorKind::WindowTooShort, "front series is empty or ragged");
  }
  if (!(window_fraction > 0.0 && window_fraction <= 0.5)) {
    throw Error(ErrorKind::InvalidSpec, "window fraction must lie in (0, 0.5]");
  }
  SpeedFit fit;
  fit.t_hi = t.back();
  fit.t_lo = fit.t_hi - window_fraction * (fit.t_hi - t.front());

  // Least squares on centred sums.
  double n = 0.0, mean_t = 0.0, mean_s = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < fit.t_lo) continue;
    n += 1.0;
    mean_t += t[i];
    mean_s += s[i];
  }
  fit.points = static_cast<int>(n);
  if (fit.points < 10) throw Error(ErrorKind::WindowTooShort, "fewer than 10 points in window");
  mean_t /= n;
  mean_s /= n;
  double stt = 0.0, sts = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < fit.t_lo) continue;
    stt += (t[i] - mean_t) * (t[i] - mean_t);
    sts += (t[i] - mean_t) * (s[i] - mean_s);
  }
  fit.slope = sts / stt;
  fit.intercept = mean_s - fit.slope * mean_t;
  for (size_t i = 0; i < t.size(); ++i) {
    if (t[i] < fit.t_lo) continue;
    fit.max_residual = std::max(fit.max_residual, std::abs(s[i] - fit.intercept - fit.slope * t[i]));
  }
  return fit;
}

SpeedFit fit_front_speed(const Trajectory& traj, Species species, double window_fraction) {
  std::vector<double> t, s;
  t.reserve(traj.fronts.size());
  s.reserve(traj.fronts.size());
  for (const auto& f : traj.fronts) {
    t.push_back(f.t);
    s.push_back(species == Species::U ? f.s1 : f.s2);
  }
  return fit_front_speed(t, s, window_fraction);
}

SpeedReport speed_report(const Trajectory& traj, Species species, double predicted,
                         double window_fraction) {
  SpeedReport report;
  report.species = species;
  report.fit = fit_front_speed(traj, species, window_fraction);
  report.predicted = predicted;
  report.rel_err = std::abs(report.fit.slope - predicted) / predicted;
  return report;
}

namespace {

// Sup of fn over the interpolated profile on [a, b]: every interpolant piece is monotone,
// so nodes inside the band plus the two band ends suffice.
template <typename Fn>
double band_sup(const Vector& profile, double front, double a, double b, Fn fn) {
  const Eigen::Index n = profile.size() - 1;
  double sup = 0.0;
  for (Eigen::Index j = 0; j <= n; ++j) {
    const double r = front * static_cast<double>(j) / static_cast<double>(n);
    if (r >= a && r <= b) sup = std::max(sup, fn(profile(j)));
  }
  Vector ends(2);
  ends << a, b;
  const Vector at_ends = cross_grid_sample(profile, front, ends, true);
  return std::max({sup, fn(at_ends(0)), fn(at_ends(1))});
}

}  // namespace

SegregationMetrics segregation_metrics(const SimState& snapshot, double c_hat, double s_hat,
                                       double eps) {
  const double t = snapshot.t;
  if (!(t > 0.0) || !(c_hat - eps > 0.0) || !(c_hat + eps < s_hat - eps)) {
    throw Error(ErrorKind::EmptyBand, "segregation bands are empty for these speeds and eps");
  }
  SegregationMetrics m;
  m.eps = eps;
  m.t = t;
  const double inner = (c_hat - eps) * t;
  const double band_lo = (c_hat + eps) * t;
  const double band_hi = (s_hat - eps) * t;
  auto dev = [](double x) { return std::abs(x - 1.0); };
  auto id = [](double x) { return x; };
  m.u_deviation_inner = band_sup(snapshot.U, snapshot.s1, 0.0, inner, dev);
  m.v_deviation_band = band_sup(snapshot.V, snapshot.s2, band_lo, band_hi, dev);
  m.v_inner = band_sup(snapshot.V, snapshot.s2, 0.0, inner, id);
  return m;
}

double plateau_length(const Vector& profile, double front, double delta) {
  const Eigen::Index n = profile.size() - 1;
  const double dr = front / static_cast<double>(n);
  double best = 0.0;
  Eigen::Index start = -1;
  for (Eigen::Index j = 0; j <= n + 1; ++j) {
    const bool above = j <= n && profile(j) >= delta;
    if (above && start < 0) start = j;
    if (!above && start >= 0) {
      best = std::max(best, static_cast<double>(j - 1 - start) * dr);
      start = -1;
    }
  }
  return best;
}

namespace {

SpeciesOutcome classify_species(const Trajectory& traj, Species species,
                                const ClassifierConfig& config) {
  auto front_of = [&](const FrontSample& f) { return species == Species::U ? f.s1 : f.s2; };
  SpeciesOutcome out;
  out.initial_front = species == Species::U ? traj.s1_0 : traj.s2_0;
  const FrontSample& last = traj.fronts.back();
  out.final_front = front_of(last);
  const double t_half = traj.fronts.front().t + 0.5 * (last.t - traj.fronts.front().t);
  const auto mid = std::lower_bound(traj.fronts.begin(), traj.fronts.end(), t_half,
                                    [](const FrontSample& f, double t) { return f.t < t; });
  out.front_growth = out.final_front - front_of(*mid);

  const SimState& final_state = traj.snapshots.back();
  const Vector& final_profile = species == Species::U ? final_state.U : final_state.V;
  out.final_sup = final_profile.maxCoeff();
  out.min_plateau = std::numeric_limits<double>::infinity();
  for (const auto& snap : traj.snapshots) {
    const Vector& p = species == Species::U ? snap.U : snap.V;
    const double front = species == Species::U ? snap.s1 : snap.s2;
    out.min_plateau = std::min(out.min_plateau, plateau_length(p, front, config.delta));
  }

  const bool stalled = out.front_growth < config.stall_tol * out.initial_front;
  if (stalled && out.final_sup < config.sup_tol) {
    out.status = Status::Vanishes;
  } else if (out.final_front > config.spread_factor * out.initial_front &&
             out.min_plateau >= config.delta) {
    out.status = Status::Spreads;
  }
  return out;
}

}  // namespace

Outcome classify_outcome(const Trajectory& traj, const ClassifierConfig& config) {
  if (traj.fronts.empty() || traj.snapshots.empty()) {
    throw Error(ErrorKind::InvalidState, "empty trajectory");
  }
  return {classify_species(traj, Species::U, config), classify_species(traj, Species::V, config)};
}

TrichotomyThresholds trichotomy_thresholds(const ModelParams& params) {
  if (!(params.k >= 0.0 && params.k < 1.0)) {
    throw Error(ErrorKind::InvalidSpec, "thresholds need 0 <= k < 1");
  }
  const double rs = compute_R_star(params.N);
  TrichotomyThresholds th;
  th.s_star_low = rs * std::sqrt(params.d / params.r);
  th.s_star_mid = th.s_star_low / std::sqrt(1.0 - params.k);
  th.s_star_v = rs;
  return th;
}

RegionBCheck check_region_B(const ModelParams& params, double tol) {
  RegionBCheck check;
  check.c_star = compute_c_star(params, tol);
  check.s_star = compute_s_star(1.0, 1.0, 1.0, params.mu2, tol);
  check.margin = check.c_star - check.s_star;
  check.positive = check.margin > 0.0;
  return check;
}

}  // namespace fbm
