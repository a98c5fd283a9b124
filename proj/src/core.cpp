#include "fbm/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbm/interpolation.hpp"
#include "fbm/tridiagonal.hpp"

namespace fbm {
namespace {

constexpr double kUndershoot = 1e-12;

// Resamples uniform samples over [0, front] onto n_cells + 1 straightened nodes.
Vector resample(const Vector& samples, int n_cells) {
  const Vector from = Vector::LinSpaced(samples.size(), 0.0, 1.0);
  const MonotoneCubic<double> interp(from, samples);
  const Vector R = straightened_grid(n_cells);
  Vector out(R.size());
  for (Eigen::Index j = 0; j < R.size(); ++j) out(j) = interp(R(j));
  return out;
}

// Front velocity from the Stefan condition; the Hopf sign is enforced.
double front_velocity(const Vector& profile, double front, double mu) {
  return std::max(0.0, -mu * front_gradient(profile) / front);
}

struct SpeciesCoefficients {
  double diffusion;
  double growth;  // reaction growth * X (1 - X - competition * other)
  double competition;
};


enum class RightEnd { Dirichlet, ZeroFlux };

// Advances one straightened profile.  `other` holds the competitor sampled at this profile's
// physical radii; `front` is the current front, `front_new` the advanced one.
Vector advance_profile(const Vector& X, const Vector& other, double front, double front_new,
                       double front_dot, const SpeciesCoefficients& coef, int N,
                       const NumericsConfig& numerics, RightEnd right_end) {
  const int n = numerics.n_cells;
  const double dt = numerics.dt;
  const double dR = 1.0 / n;
  const Eigen::Index last = n;

  Vector rhs(n + 1);
  for (Eigen::Index j = 0; j <= last; ++j) {
    rhs(j) = X(j) + dt * coef.growth * X(j) * (1.0 - X(j) - coef.competition * other(j));
  }

  // Upwind drift (front_dot R / front) X_R: information travels toward R = 0.
  auto drift = [&](Eigen::Index j) { return front_dot * (j * dR) / front / dR; };

  if (numerics.scheme == Scheme::Explicit) {
    for (Eigen::Index j = 0; j < last; ++j) {
      const auto row = radial_laplacian_row<double>(static_cast<int>(j), front, N, n);
      const double left = j == 0 ? X(1) : X(j - 1);
      rhs(j) += dt * coef.diffusion * (row[0] * left + row[1] * X(j) + row[2] * X(j + 1));
      rhs(j) += dt * drift(j) * (X(j + 1) - X(j));
    }
    if (right_end == RightEnd::ZeroFlux) {
      const auto row = radial_laplacian_row<double>(n, front, N, n);
      rhs(last) += dt * coef.diffusion * (row[0] + row[2]) * X(last - 1) +
                   dt * coef.diffusion * row[1] * X(last);
    } else {
      rhs(last) = 0.0;
    }
    return rhs;
  }

  // Implicit diffusion and implicit drift on the advanced front.  Centred drift while the
  // lower coefficient stays nonpositive, upwind otherwise.
  Tridiagonal<double> a(n + 1);
  for (Eigen::Index j = 0; j < last; ++j) {
    const auto row = radial_laplacian_row<double>(static_cast<int>(j), front_new, N, n);
    const double w = drift(j);
    if (j == 0) {
      a.diag(0) = 1.0 - dt * coef.diffusion * row[1];
      a.upper(0) = -dt * coef.diffusion * (row[0] + row[2]);
    } else if (0.5 * w <= coef.diffusion * row[0]) {
      a.lower(j) = -dt * coef.diffusion * row[0] + 0.5 * dt * w;
      a.diag(j) = 1.0 - dt * coef.diffusion * row[1];
      a.upper(j) = -dt * coef.diffusion * row[2] - 0.5 * dt * w;
    } else {
      a.lower(j) = -dt * coef.diffusion * row[0];
      a.diag(j) = 1.0 - dt * coef.diffusion * row[1] + dt * w;
      a.upper(j) = -dt * coef.diffusion * row[2] - dt * w;
    }
  }
  if (right_end == RightEnd::ZeroFlux) {
    const auto row = radial_laplacian_row<double>(n, front_new, N, n);
    a.lower(last) = -dt * coef.diffusion * (row[0] + row[2]);
    a.diag(last) = 1.0 - dt * coef.diffusion * row[1];
  } else {
    a.diag(last) = 1.0;
    rhs(last) = 0.0;
  }
  return solve(a, rhs);
}

void finalize_profile(Vector& X, double t, const char* name) {
  for (Eigen::Index j = 0; j < X.size(); ++j) {
    const double x = X(j);
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::StabilityFailure, std::string(name) + " is not finite", t);
    }
    if (x < 0.0) {
      if (x < -kUndershoot) {
        throw Error(ErrorKind::StabilityFailure,
                    std::string(name) + " undershoot " + std::to_string(x), t);
      }
      X(j) = 0.0;
    }
  }
}

SimState advance(const SimState& state, const ModelParams& params, const NumericsConfig& numerics,
                 Problem problem) {
  check_state(state, numerics.n_cells);
  const int n = numerics.n_cells;
  const Vector R = straightened_grid(n);

  SimState next;
  next.s1_dot = front_velocity(state.U, state.s1, params.mu1);
  next.s2_dot = problem == Problem::TwoFronts ? front_velocity(state.V, state.s2, params.mu2) : 0.0;
  next.s1 = state.s1 + numerics.dt * next.s1_dot;
  next.s2 = state.s2 + numerics.dt * next.s2_dot;
  next.t = state.t + numerics.dt;

  const bool v_compact = problem == Problem::TwoFronts;
  const Vector v_at_u = cross_grid_sample(state.V, state.s2, (R * state.s1).eval(), v_compact);
  const Vector u_at_v = cross_grid_sample(state.U, state.s1, (R * state.s2).eval(), true);

  next.U = advance_profile(state.U, v_at_u, state.s1, next.s1, next.s1_dot,
                           {params.d, params.r, params.k}, params.N, numerics, RightEnd::Dirichlet);
  next.V = advance_profile(state.V, u_at_v, state.s2, next.s2, next.s2_dot, {1.0, 1.0, params.h},
                           params.N, numerics,
                           v_compact ? RightEnd::Dirichlet : RightEnd::ZeroFlux);
  finalize_profile(next.U, next.t, "U");
  finalize_profile(next.V, next.t, "V");
  return next;
}

Trajectory integrate(const ModelParams& params, SimState state, const NumericsConfig& numerics,
                     Problem problem) {
  params.validate();
  numerics.validate();
  check_state(state, numerics.n_cells);
  Trajectory traj;
  traj.problem = problem;
  traj.s1_0 = state.s1;
  traj.s2_0 = state.s2;

  const auto total = static_cast<long>(std::llround(numerics.t_end / numerics.dt));
  traj.fronts.reserve(total + 1);
  state.s1_dot = front_velocity(state.U, state.s1, params.mu1);
  state.s2_dot = problem == Problem::TwoFronts ? front_velocity(state.V, state.s2, params.mu2) : 0.0;
  traj.fronts.push_back({state.t, state.s1, state.s2, state.s1_dot, state.s2_dot});
  traj.snapshots.push_back(state);

  double gap = state.s1 - state.s2;
  for (long i = 1; i <= total; ++i) {
    state = problem == Problem::TwoFronts ? step(state, params, numerics)
                                          : step_Q(state, params, numerics);
    // Record velocities from the state reached, so the series reads like s'(t).
    const double s1_dot = front_velocity(state.U, state.s1, params.mu1);
    const double s2_dot =
        problem == Problem::TwoFronts ? front_velocity(state.V, state.s2, params.mu2) : 0.0;
    traj.fronts.push_back({state.t, state.s1, state.s2, s1_dot, s2_dot});
    const double new_gap = state.s1 - state.s2;
    if ((gap < 0.0 && new_gap >= 0.0) || (gap > 0.0 && new_gap <= 0.0)) {
      traj.crossings.push_back(state.t);
    }
    gap = new_gap;
    if (problem == Problem::ResidentV && state.s1 >= 0.9 * state.s2) {
      throw Error(ErrorKind::DomainTooSmall, "front reached 0.9 L_domain", state.t);
    }
    if (i % numerics.snapshot_every == 0 || i == total) {
      SimState snap = state;
      snap.s1_dot = s1_dot;
      snap.s2_dot = s2_dot;
      traj.snapshots.push_back(std::move(snap));
    }
  }
  return traj;
}

void check_profile_samples(const Vector& samples, const char* name, bool vanish_at_end) {
  if (samples.size() < 3) {
    throw Error(ErrorKind::InvalidSpec, std::string(name) + " needs at least 3 samples");
  }
  const Eigen::Index n = samples.size();
  const Eigen::Index interior_end = vanish_at_end ? n - 1 : n;
  for (Eigen::Index j = 0; j < interior_end; ++j) {
    if (!(samples(j) > 0.0) || !std::isfinite(samples(j))) {
      throw Error(ErrorKind::InvalidSpec, std::string(name) + " must be positive before its front");
    }
  }
  if (vanish_at_end && samples(n - 1) != 0.0) {
    throw Error(ErrorKind::InvalidSpec, std::string(name) + " must vanish at its front");
  }
  const double sup = samples.lpNorm<Eigen::Infinity>();
  if (std::abs(4.0 * samples(1) - 3.0 * samples(0) - samples(2)) > 1e-6 * sup) {
    throw Error(ErrorKind::InvalidSpec, std::string(name) + " must have zero slope at r = 0");
  }
}

}  // namespace

void NumericsConfig::validate() const {
  if (n_cells < 32) throw Error(ErrorKind::InvalidConfig, "n_cells must be >= 32");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidConfig, "dt must be > 0");
  if (snapshot_every < 1) throw Error(ErrorKind::InvalidConfig, "snapshot_every must be >= 1");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidConfig, "t_end must be >= 0");
  }
}

double NumericsConfig::explicit_dt_limit(const ModelParams& params, double s1, double s2) const {
  const double dr_min = std::min(s1, s2) / n_cells;
  return 0.4 * dr_min * dr_min / std::max(params.d, 1.0);
}

void InitialData::validate() const {
  if (!(s1_0 > 0.0 && s2_0 > 0.0)) throw Error(ErrorKind::InvalidSpec, "initial fronts must be > 0");
  check_profile_samples(u0, "u0", true);
  check_profile_samples(v0, "v0", true);
}

void ProblemQData::validate() const {
  if (!(h0 > 0.0)) throw Error(ErrorKind::InvalidSpec, "h0 must be > 0");
  if (!(L_domain > h0)) throw Error(ErrorKind::InvalidSpec, "L_domain must exceed h0");
  check_profile_samples(u0, "u0", true);
  if (v0.size() < 3 || (v0.array() < 0.0).any() || !v0.allFinite()) {
    throw Error(ErrorKind::InvalidSpec, "v0 must be bounded and non-negative");
  }
  if (!(v0.maxCoeff() > 0.0)) throw Error(ErrorKind::InvalidSpec, "v0 must not vanish identically");
}

Vector straightened_grid(int n_cells) { return Vector::LinSpaced(n_cells + 1, 0.0, 1.0); }

Vector cross_grid_sample(const Vector& profile, double front, const Vector& radii, bool compact) {
  Vector out(radii.size());
  const Vector r = straightened_grid(static_cast<int>(profile.size()) - 1) * front;
  const MonotoneCubic<double> interp(r, profile);
  for (Eigen::Index i = 0; i < radii.size(); ++i) {
    out(i) = compact && radii(i) >= front ? 0.0 : interp(radii(i));
  }
  return out;
}

double front_gradient(const Vector& profile) {
  const Eigen::Index n = profile.size() - 1;
  const double dR = 1.0 / static_cast<double>(n);
  return (3.0 * profile(n) - 4.0 * profile(n - 1) + profile(n - 2)) / (2.0 * dR);
}

void check_state(const SimState& state, int n_cells) {
  if (state.U.size() != n_cells + 1 || state.V.size() != n_cells + 1) {
    throw Error(ErrorKind::InvalidState, "profile size does not match n_cells");
  }
  if (!(state.s1 > 0.0 && state.s2 > 0.0) || !std::isfinite(state.s1) || !std::isfinite(state.s2)) {
    throw Error(ErrorKind::InvalidState, "fronts must be positive and finite");
  }
  if (!state.U.allFinite() || !state.V.allFinite()) {
    throw Error(ErrorKind::InvalidState, "profiles must be finite");
  }
  if ((state.U.array() < 0.0).any() || (state.V.array() < 0.0).any()) {
    throw Error(ErrorKind::InvalidState, "profiles must be non-negative");
  }
  if (state.U(n_cells) != 0.0) throw Error(ErrorKind::InvalidState, "U must vanish at R = 1");
}

SimState step(const SimState& state, const ModelParams& params, const NumericsConfig& numerics) {
  if (state.V(state.V.size() - 1) != 0.0) {
    throw Error(ErrorKind::InvalidState, "V must vanish at R = 1");
  }
  return advance(state, params, numerics, Problem::TwoFronts);
}

SimState step_Q(const SimState& state, const ModelParams& params, const NumericsConfig& numerics) {
  return advance(state, params, numerics, Problem::ResidentV);
}

SimState initial_state(const InitialData& init, int n_cells) {
  SimState s;
  s.s1 = init.s1_0;
  s.s2 = init.s2_0;
  s.U = resample(init.u0, n_cells);
  s.V = resample(init.v0, n_cells);
  s.U(n_cells) = 0.0;
  s.V(n_cells) = 0.0;
  return s;
}

Trajectory run_P(const ModelParams& params, const InitialData& init, const NumericsConfig& numerics) {
  init.validate();
  numerics.validate();
  return integrate(params, initial_state(init, numerics.n_cells), numerics, Problem::TwoFronts);
}

Trajectory run_P(const ModelParams& params, const SimState& start, const NumericsConfig& numerics) {
  return integrate(params, start, numerics, Problem::TwoFronts);
}

Trajectory run_Q(const ModelParams& params, const ProblemQData& init, const NumericsConfig& numerics) {
  init.validate();
  numerics.validate();
  SimState s;
  s.s1 = init.h0;
  s.s2 = init.L_domain;
  s.U = resample(init.u0, numerics.n_cells);
  s.U(numerics.n_cells) = 0.0;
  s.V = resample(init.v0, numerics.n_cells);
  return integrate(params, s, numerics, Problem::ResidentV);
}

}  // namespace fbm
