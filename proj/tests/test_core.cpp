#include <doctest.h>

#include <cmath>

#include "fbm/core.hpp"
#include "fbm/scenarios.hpp"

using namespace fbm;

namespace {

InitialData bumps(double s1_0, double s2_0, double u_amp = 1.0, double v_amp = 1.0) {
  InitialData init;
  init.s1_0 = s1_0;
  init.s2_0 = s2_0;
  init.u0 = raised_cosine(u_amp, 401);
  init.v0 = raised_cosine(v_amp, 401);
  return init;
}

NumericsConfig small_numerics(double t_end = 2.0) {
  NumericsConfig nc;
  nc.n_cells = 128;
  nc.dt = 0.01;
  nc.t_end = t_end;
  nc.snapshot_every = 20;
  return nc;
}

}  // namespace

TEST_CASE("radial stencil is exact on r^2") {
  const int n = 50;
  const double front = 2.3;
  for (int N = 1; N <= 3; ++N) {
    const Vector R = straightened_grid(n);
    for (int j = 0; j < n; ++j) {
      const auto row = radial_laplacian_row<double>(j, front, N, n);
      auto phi = [&](int i) { return std::pow(R(std::abs(i)) * front, 2); };
      const double value = row[0] * phi(j - 1) + row[1] * phi(j) + row[2] * phi(j + 1);
      REQUIRE(value == doctest::Approx(2.0 * N).epsilon(1e-11));
    }
  }
}

TEST_CASE("radial stencil special rows") {
  const int n = 10;
  const double front = 2.0;
  const double inv = 1.0 / std::pow(front / n, 2);
  const auto interior = radial_laplacian_row<double>(4, front, 1, n);
  CHECK(interior[0] == doctest::Approx(inv));
  CHECK(interior[1] == doctest::Approx(-2 * inv));
  CHECK(interior[2] == doctest::Approx(inv));

  const auto axis = radial_laplacian_row<double>(0, front, 3, n);
  CHECK(axis[1] == doctest::Approx(-6 * inv));
  CHECK(axis[0] == axis[2]);

  const auto as_float = radial_laplacian_row<float>(4, 2.0f, 1, n);
  CHECK(as_float[1] == doctest::Approx(-2 * inv).epsilon(1e-6));
}

TEST_CASE("cross-grid sampling") {
  const int n = 64;
  const Vector R = straightened_grid(n);
  const Vector linear = (1.0 - R.array()).matrix();
  const double front = 3.0;
  Vector radii(4);
  radii << front, 2 * front, 0.5 * front, 0.0;
  const Vector values = cross_grid_sample(linear, front, radii);
  CHECK(values(0) == 0.0);
  CHECK(values(1) == 0.0);
  CHECK(values(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(values(3) == doctest::Approx(1.0));

  const Vector flat = Vector::Ones(n + 1);
  const Vector extended = cross_grid_sample(flat, front, radii, false);
  CHECK(extended(1) == doctest::Approx(1.0));
}

TEST_CASE("front gradient is second order") {
  const Vector R = straightened_grid(20);
  const Vector profile = (1.0 - R.array().square()).matrix();
  CHECK(front_gradient(profile) == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("initial data validation") {
  InitialData init = bumps(2.0, 3.0);
  CHECK_NOTHROW(init.validate());
  init.u0(init.u0.size() - 1) = 0.1;
  CHECK_THROWS_AS(init.validate(), Error);
  init = bumps(2.0, 3.0);
  init.s1_0 = -1;
  CHECK_THROWS_AS(init.validate(), Error);
  init = bumps(2.0, 3.0);
  init.v0(0) += 0.2;  // nonzero slope at the axis
  CHECK_THROWS_AS(init.validate(), Error);
}

TEST_CASE("numerics validation") {
  NumericsConfig nc;
  nc.n_cells = 8;
  CHECK_THROWS_AS(nc.validate(), Error);
  nc = NumericsConfig{};
  nc.dt = 0.0;
  CHECK_THROWS_AS(nc.validate(), Error);
}

TEST_CASE("trajectories stay non-negative, bounded and have advancing fronts") {
  const Trajectory traj = run_P(ModelParams{}, bumps(3.0, 4.0), small_numerics(4.0));
  REQUIRE(traj.snapshots.size() > 2);
  CHECK(traj.snapshots.front().t == 0.0);
  CHECK(traj.snapshots.back().t == doctest::Approx(4.0));
  for (const SimState& s : traj.snapshots) {
    CHECK(s.U.minCoeff() >= 0.0);
    CHECK(s.V.minCoeff() >= 0.0);
    CHECK(s.U.maxCoeff() <= 1.0 + 1e-9);
    CHECK(s.V.maxCoeff() <= 1.0 + 1e-9);
    CHECK(s.U(s.U.size() - 1) == 0.0);
  }
  for (size_t i = 1; i < traj.fronts.size(); ++i) {
    REQUIRE(traj.fronts[i].s1 >= traj.fronts[i - 1].s1);
    REQUIRE(traj.fronts[i].s2 >= traj.fronts[i - 1].s2);
  }
}

TEST_CASE("an identically zero species stays zero with a fixed front") {
  SimState start = initial_state(bumps(3.0, 4.0), 128);
  start.V.setZero();
  const Trajectory traj = run_P(ModelParams{}, start, small_numerics(3.0));
  for (const SimState& s : traj.snapshots) {
    CHECK(s.V.maxCoeff() == 0.0);
    CHECK(s.s2 == 4.0);
  }
  CHECK(traj.snapshots.back().s1 > 3.0);
}

TEST_CASE("mixed ordering of fronts") {
  const Trajectory a = run_P(ModelParams{}, bumps(3.0, 4.0, 1.0, 0.5), small_numerics(3.0));
  const Trajectory b = run_P(ModelParams{}, bumps(3.0, 4.0, 0.6, 1.0), small_numerics(3.0));
  REQUIRE(a.fronts.size() == b.fronts.size());
  for (size_t i = 0; i < a.fronts.size(); ++i) {
    REQUIRE(a.fronts[i].s1 >= b.fronts[i].s1);
    REQUIRE(a.fronts[i].s2 <= b.fronts[i].s2);
  }
}

TEST_CASE("explicit scheme beyond its stability bound fails early") {
  NumericsConfig nc = small_numerics(2.0);
  nc.scheme = Scheme::Explicit;
  nc.dt = 0.05;
  CHECK(nc.dt > nc.explicit_dt_limit(ModelParams{}, 3.0, 4.0));
  try {
    run_P(ModelParams{}, bumps(3.0, 4.0), nc);
    FAIL("expected StabilityFailure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StabilityFailure);
    REQUIRE(e.time().has_value());
    CHECK(*e.time() < 1.0);
  }
}

TEST_CASE("explicit scheme within its bound agrees with IMEX") {
  NumericsConfig nc = small_numerics(1.0);
  nc.n_cells = 64;
  nc.scheme = Scheme::Explicit;
  nc.dt = 0.5 * nc.explicit_dt_limit(ModelParams{}, 3.0, 4.0);
  nc.snapshot_every = 100000;
  const Trajectory ex = run_P(ModelParams{}, bumps(3.0, 4.0), nc);
  nc.scheme = Scheme::Imex;
  const Trajectory im = run_P(ModelParams{}, bumps(3.0, 4.0), nc);
  CHECK(std::abs(ex.fronts.back().s1 - im.fronts.back().s1) < 1e-3);
  CHECK(std::abs(ex.fronts.back().s2 - im.fronts.back().s2) < 1e-3);
}

TEST_CASE("resident-v problem reports a domain that is too small") {
  ModelParams p;
  const ProblemQData data = build_Q_data(p, 3.0, 1.0, 4.0);
  NumericsConfig nc = small_numerics(200.0);
  nc.snapshot_every = 1000;
  CHECK_THROWS_WITH_AS(run_Q(p, data, nc), doctest::Contains("0.9"), Error);
}
