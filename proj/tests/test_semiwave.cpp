#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fbm/semiwave.hpp"
#include "oracles.hpp"

using namespace fbm;

TEST_CASE("R* is the first zero of the radial eigenfunction") {
  CHECK(compute_R_star(1) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(compute_R_star(3) == doctest::Approx(std::numbers::pi).epsilon(1e-12));

  const double j0_zero = oracle::bisect(oracle::bessel_j0, 2.0, 3.0, 1e-14);
  CHECK(std::abs(j0_zero - 2.404825557695773) < 1e-12);
  CHECK(std::abs(compute_R_star(2) - j0_zero) < 1e-8);
  CHECK_THROWS_AS(compute_R_star(0), Error);
}

TEST_CASE("scalar semi-wave at zero speed matches the first integral") {
  const double cases[][3] = {{1, 1, 1}, {2, 0.5, 1.5}, {0.7, 1.3, 0.4}};
  for (const auto& c : cases) {
    const auto sol = solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(c[0], c[1], c[2], 0.0));
    REQUIRE(sol.converged);
    const double oracle_slope = oracle::zero_speed_slope(c[0], c[1], c[2]);
    CHECK(oracle_slope == doctest::Approx(std::pow(c[0], 1.5) / (std::sqrt(3 * c[2]) * c[1])).epsilon(1e-10));
    CHECK(std::abs(std::abs(sol.slope_at_front) - oracle_slope) / oracle_slope < 1e-4);
  }
}

TEST_CASE("scalar semi-wave profile is strictly decreasing and bounded") {
  const auto sol = solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(1, 1, 1, 1.2));
  REQUIRE(sol.converged);
  for (Eigen::Index i = 1; i < sol.q.size(); ++i) REQUIRE(sol.q(i) < sol.q(i - 1));
  CHECK(sol.q(0) == doctest::Approx(1.0));
  CHECK(sol.q(sol.q.size() - 1) == 0.0);
}

TEST_CASE("scalar semi-wave slope agrees with the phase-plane oracle") {
  for (double s : {0.3, 1.0, 1.7}) {
    const auto sol = solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(1, 1, 1, s));
    const double ref = oracle::phase_plane_slope(1, 1, 1, s);
    CHECK(std::abs(std::abs(sol.slope_at_front) - ref) / ref < 5e-4);
  }
}

TEST_CASE("scalar semi-wave rejects speeds outside [0, 2 sqrt(ad))") {
  CHECK_THROWS_AS(solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(1, 1, 1, 2.0)), Error);
  CHECK_THROWS_AS(solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(1, 1, 1, -0.1)), Error);
  CHECK_THROWS_AS(solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(-1, 1, 1, 0.1)), Error);
}

TEST_CASE("s* against the phase-plane oracle") {
  for (double mu : {0.5, 1.0, 5.0}) {
    CHECK(std::abs(compute_s_star(1, 1, 1, mu) - oracle::s_star(1, 1, 1, mu)) < 1e-4);
  }
  CHECK(std::abs(compute_s_star(2, 0.5, 0.7, 1.3) - oracle::s_star(2, 0.5, 0.7, 1.3)) < 1e-4);
}

TEST_CASE("s* scaling identity") {
  const double cases[][4] = {{2, 3, 0.5, 1}, {0.6, 0.2, 1.7, 4}, {1.5, 1, 1, 0.3}};
  for (const auto& c : cases) {
    const double lhs = compute_s_star(c[0], c[1], c[2], c[3]);
    const double rhs = std::sqrt(c[0] * c[2]) * compute_s_star(1, 1, 1, c[3] * c[0] / (c[1] * c[2]));
    CHECK(std::abs(lhs - rhs) < 1e-6);
  }
}

TEST_CASE("s* small-mu asymptote, monotonicity and bounds") {
  CHECK(std::abs(compute_s_star(1, 1, 1, 0.01) / (0.01 / std::sqrt(3.0)) - 1.0) < 0.05);
  double previous = 0.0;
  for (double mu : {0.1, 0.5, 1.0, 5.0, 20.0}) {
    const double s = compute_s_star(1, 1, 1, mu);
    CHECK(s > previous);
    CHECK(s < 2.0);
    previous = s;
  }
  CHECK(compute_s_star(1, 1, 1, 10.0) > compute_s_star(1, 1, 1, 1.0));
}

TEST_CASE("s* is insensitive to the truncation") {
  const double base = compute_s_star(1, 1, 1, 1.0);
  CHECK(std::abs(compute_s_star(1, 1, 1, 1.0, 1e-8, Truncation{60.0, 100}) - base) < 1e-6);
  CHECK(std::abs(compute_s_star(1, 1, 1, 1.0, 1e-8, Truncation{40.0, 200}) - base) < 1e-4);
}

TEST_CASE("coupled semi-wave profiles are monotone") {
  ModelParams p;
  const auto sol = solve_coupled_semiwave(CoupledSemiWaveSpec::with_defaults(p, 0.3));
  REQUIRE(sol.converged);
  CHECK_FALSE(sol.degenerate);
  for (Eigen::Index i = 1; i < sol.U.size(); ++i) REQUIRE(sol.U(i) <= sol.U(i - 1) + 1e-12);
  for (Eigen::Index i = 1; i < sol.V.size(); ++i) REQUIRE(sol.V(i) >= sol.V(i - 1) - 1e-12);
  CHECK(sol.U(sol.U.size() - 1) == 0.0);
  CHECK(sol.V(sol.V.size() - 1) == doctest::Approx(1.0));
  CHECK(sol.slope_at_front < 0.0);
}

TEST_CASE("coupled semi-wave collapses above the minimal KPP-type speed") {
  ModelParams p;
  const auto sol = solve_coupled_semiwave(CoupledSemiWaveSpec::with_defaults(p, 1.9));
  CHECK(sol.degenerate);
}

TEST_CASE("coupled spec requires 0 <= k < 1 < h") {
  ModelParams p;
  auto spec = CoupledSemiWaveSpec::with_defaults(p, 0.3);
  spec.k = 1.2;
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.k = 0.5;
  spec.h = 0.9;
  CHECK_THROWS_AS(spec.validate(), Error);
}

TEST_CASE("c* reduces to s* when k = 0") {
  ModelParams p;
  p.k = 0.0;
  for (double mu1 : {0.5, 2.0}) {
    p.mu1 = mu1;
    CHECK(std::abs(compute_c_star(p) - compute_s_star(p.r, p.r, p.d, mu1)) < 1e-6);
  }
}

TEST_CASE("c* increases with mu1 and stays below 2 sqrt(rd)") {
  ModelParams p;
  double previous = 0.0;
  for (double mu1 : {0.1, 1.0, 5.0}) {
    p.mu1 = mu1;
    const double c = compute_c_star(p);
    CHECK(c > previous);
    CHECK(c < 2.0);
    previous = c;
  }
}

TEST_CASE("c0 bracket lies below the KPP bound for the u equation") {
  ModelParams p;
  const auto [lo, hi] = estimate_c0(p, 0.01);
  CHECK(hi - lo <= 0.01 + 1e-12);
  CHECK(lo > 1.3);
  CHECK(hi <= 2.0 * std::sqrt(1.0 - p.k) + 0.01);
  p.mu1 = 20.0;
  CHECK(compute_c_star(p) < hi);
}
