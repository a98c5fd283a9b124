#include <doctest.h>

#include <cmath>

#include "fbm/diagnostics.hpp"
#include "fbm/semiwave.hpp"

using namespace fbm;

namespace {

std::vector<double> times(double t0, double t1, int n) {
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) t[i] = t0 + (t1 - t0) * i / (n - 1);
  return t;
}

// Segregated state at time t on a grid of n cells: u = 1 up to s1, v = 0 below `inner`
// and 1 from `inner` to just short of s2.
SimState segregated(double t, double s1, double s2, double inner, int n = 400) {
  SimState s;
  s.t = t;
  s.s1 = s1;
  s.s2 = s2;
  const Vector R = straightened_grid(n);
  s.U = Vector::Ones(n + 1);
  s.U(n) = 0.0;
  s.V.resize(n + 1);
  for (int j = 0; j <= n; ++j) s.V(j) = R(j) * s2 < inner ? 0.0 : 1.0;
  s.V(n) = 0.0;
  return s;
}

Trajectory synthetic(double s0, std::function<double(double)> front, std::function<double(double)> level) {
  Trajectory traj;
  traj.s1_0 = traj.s2_0 = s0;
  const int n = 64;
  const Vector R = straightened_grid(n);
  for (int i = 0; i <= 100; ++i) {
    const double t = i;
    SimState s;
    s.t = t;
    s.s1 = s.s2 = front(t);
    s.U = (level(t) * (1.0 - R.array().square())).matrix();
    s.V = s.U;
    traj.snapshots.push_back(s);
    traj.fronts.push_back({t, s.s1, s.s2, 0.0, 0.0});
  }
  return traj;
}

}  // namespace

TEST_CASE("speed fit on an exact line") {
  const auto t = times(0, 10, 101);
  std::vector<double> s;
  for (double x : t) s.push_back(3 + 1.7 * x);
  const SpeedFit fit = fit_front_speed(t, s);
  CHECK(std::abs(fit.slope - 1.7) < 1e-12);
  CHECK(fit.t_lo >= fit.t_hi / 2);
  CHECK(fit.max_residual < 1e-12);
}

TEST_CASE("speed fit on a constant series") {
  const auto t = times(0, 10, 50);
  const std::vector<double> s(t.size(), 4.2);
  CHECK(std::abs(fit_front_speed(t, s).slope) < 1e-12);
}

TEST_CASE("speed fit with a logarithmic correction") {
  // On [T/2, T] the least-squares slope of a log t lies between a/T and 2a/T.
  const double c = 0.8, a = 1.5;
  for (double T : {50.0, 200.0, 800.0}) {
    const auto t = times(1, T, 2000);
    std::vector<double> s;
    for (double x : t) s.push_back(c * x + a * std::log(x));
    const double excess = fit_front_speed(t, s).slope - c;
    CHECK(excess >= a / T);
    CHECK(excess <= 2 * a / T);
  }
}

TEST_CASE("speed fit needs enough points") {
  const auto t = times(0, 1, 12);
  const std::vector<double> s(t.size(), 1.0);
  CHECK_THROWS_AS(fit_front_speed(t, s), Error);
  CHECK_THROWS_AS(fit_front_speed(times(0, 1, 100), std::vector<double>(100, 1.0), 0.7), Error);
}

TEST_CASE("segregation metrics vanish on an ideal segregated state") {
  const double t = 100, c = 0.3, s = 0.8;
  const SimState state = segregated(t, c * t, s * t, c * t);
  const SegregationMetrics m = segregation_metrics(state, c, s, 0.1);
  CHECK(m.u_deviation_inner == 0.0);
  CHECK(m.v_deviation_band == 0.0);
  CHECK(m.v_inner == 0.0);
}

TEST_CASE("segregation metrics never grow with eps") {
  const double t = 100, c = 0.3, s = 0.8;
  SimState state = segregated(t, c * t, s * t, c * t);
  const Vector R = straightened_grid(400);
  for (int j = 0; j <= 400; ++j) {
    const double r = R(j);
    state.U(j) = 1.0 - r * r * r;
    state.V(j) = std::sin(3.0 * r) * (1.0 - r);
  }
  double last_u = 1e9, last_v = 1e9, last_inner = 1e9;
  for (double eps : {0.02, 0.05, 0.1, 0.15}) {
    const SegregationMetrics m = segregation_metrics(state, c, s, eps);
    CHECK(m.u_deviation_inner <= last_u);
    CHECK(m.v_deviation_band <= last_v);
    CHECK(m.v_inner <= last_inner);
    last_u = m.u_deviation_inner;
    last_v = m.v_deviation_band;
    last_inner = m.v_inner;
  }
}

TEST_CASE("segregation rejects empty bands") {
  const SimState state = segregated(100, 30, 80, 30);
  CHECK_THROWS_AS(segregation_metrics(state, 0.3, 0.8, 0.3), Error);
  CHECK_THROWS_AS(segregation_metrics(state, 0.05, 0.8, 0.1), Error);
}

TEST_CASE("plateau length") {
  const int n = 100;
  const Vector R = straightened_grid(n);
  const Vector profile = (1.0 - R.array()).matrix();
  CHECK(plateau_length(profile, 10.0, 0.5) == doctest::Approx(5.0).epsilon(0.02));
  CHECK(plateau_length(Vector::Zero(n + 1), 10.0, 0.1) == 0.0);
}

TEST_CASE("classification of synthetic outcomes") {
  const Trajectory dying = synthetic(2.0, [](double t) { return 2.0 + 1.0 - std::exp(-t); },
                                     [](double t) { return std::exp(-0.5 * t); });
  const Outcome a = classify_outcome(dying);
  CHECK(a.u.status == Status::Vanishes);
  CHECK(a.v.status == Status::Vanishes);

  const Trajectory spreading = synthetic(2.0, [](double t) { return 2.0 + 0.5 * t; },
                                         [](double) { return 1.0; });
  const Outcome b = classify_outcome(spreading);
  CHECK(b.u.status == Status::Spreads);
  CHECK(b.u.final_front == doctest::Approx(52.0));

  const Trajectory unclear = synthetic(2.0, [](double t) { return 2.0 + 0.01 * t; },
                                       [](double) { return 0.5; });
  CHECK(classify_outcome(unclear).u.status == Status::Undecided);
}

TEST_CASE("trichotomy thresholds") {
  ModelParams p;
  const TrichotomyThresholds th = trichotomy_thresholds(p);
  CHECK(th.s_star_low == doctest::Approx(compute_R_star(1)));
  CHECK(th.s_star_mid == doctest::Approx(compute_R_star(1) / std::sqrt(0.5)));
  CHECK(th.s_star_low < th.s_star_mid);
  CHECK(th.s_star_v == doctest::Approx(compute_R_star(1)));
}

TEST_CASE("region B flag") {
  ModelParams p;
  p.mu2 = 0.05;
  CHECK(check_region_B(p).positive);
  p.mu2 = 1.0;
  p.mu1 = 0.05;
  CHECK_FALSE(check_region_B(p).positive);

  // sqrt(rd) < 1 and mu2 large: negative on a ladder of mu1.
  p.d = 0.25;
  p.r = 0.25;
  p.mu2 = 50.0;
  for (double mu1 : {0.1, 1.0, 10.0, 100.0}) {
    p.mu1 = mu1;
    CHECK(check_region_B(p).margin < 0.0);
  }
}
