#pragma once

#include <array>
#include <vector>

#include "fbm/types.hpp"

namespace fbm {

enum class Scheme { Imex, Explicit };

struct NumericsConfig {
  int n_cells = 512;
  double dt = 0.01;
  Scheme scheme = Scheme::Imex;
  int snapshot_every = 1000;
  double t_end = 10.0;

  /// Structural checks only; the explicit stability bound is left to the stepper, which
  /// reports StabilityFailure when it is exceeded.
  void validate() const;
  /// 0.4 (dr_min)^2 / max(d, 1) for the given fronts.
  double explicit_dt_limit(const ModelParams& params, double s1, double s2) const;
};

/// Initial fronts and samples on uniform grids over [0, s1_0] and [0, s2_0].
struct InitialData {
  double s1_0 = 0.0;
  double s2_0 = 0.0;
  Vector u0;
  Vector v0;

  void validate() const;
};

/// Initial data for the single-front problem: u invades a resident v living on the fixed
/// domain [0, L_domain] with zero flux at both ends.
struct ProblemQData {
  double h0 = 0.0;
  Vector u0;  ///< uniform samples over [0, h0]
  double L_domain = 0.0;
  Vector v0;  ///< uniform samples over [0, L_domain]

  void validate() const;
};

/// Straightened state: U(R) = u(R s1), V(R) = v(R s2), R in [0, 1] on n_cells + 1 nodes.
struct SimState {
  double t = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s1_dot = 0.0;
  double s2_dot = 0.0;
  Vector U;
  Vector V;
};

struct FrontSample {
  double t, s1, s2, s1_dot, s2_dot;
};

enum class Problem { TwoFronts, ResidentV };

struct Trajectory {
  Problem problem = Problem::TwoFronts;
  double s1_0 = 0.0;
  double s2_0 = 0.0;
  std::vector<SimState> snapshots;
  std::vector<FrontSample> fronts;
  std::vector<double> crossings;  ///< times at which s1 - s2 changed sign
};

/// Uniform grid R_j = j / n_cells.
Vector straightened_grid(int n_cells);

/// Values of a straightened profile at physical radii.  Monotone cubic interpolation in
/// r = R * front; radii at or beyond the front give exactly 0 when `compact`, otherwise the
/// end value.
Vector cross_grid_sample(const Vector& profile, double front, const Vector& radii,
                         bool compact = true);

/// Coefficients {lower, center, upper} of (phi_rr + (N-1)/r phi_r) at node R_index of the
/// straightened grid, r = R * front.  At R = 0 the symmetry limit N phi_RR / front^2 with a
/// mirrored ghost node is used (lower then multiplies the ghost, equal to node 1).
template <typename Scalar>
std::array<Scalar, 3> radial_laplacian_row(int R_index, Scalar front, int N, int n_cells) {
  const Scalar dR = Scalar(1) / Scalar(n_cells);
  const Scalar inv = Scalar(1) / (dR * dR * front * front);
  if (R_index == 0) return {Scalar(N) * inv, Scalar(-2 * N) * inv, Scalar(N) * inv};
  const Scalar skew = Scalar(N - 1) / (Scalar(2) * Scalar(R_index));
  return {(Scalar(1) - skew) * inv, Scalar(-2) * inv, (Scalar(1) + skew) * inv};
}

/// Second-order one-sided derivative dU/dR at R = 1.
double front_gradient(const Vector& profile);

/// Rejects non-finite values, mismatched sizes, nonzero front values and negative densities.
void check_state(const SimState& state, int n_cells);

/// One step of the two-front system.
SimState step(const SimState& state, const ModelParams& params, const NumericsConfig& numerics);

/// One step of the resident-v system; state.s2 holds L_domain.
SimState step_Q(const SimState& state, const ModelParams& params, const NumericsConfig& numerics);

/// Resamples initial data onto the straightened grids.
SimState initial_state(const InitialData& init, int n_cells);

Trajectory run_P(const ModelParams& params, const InitialData& init, const NumericsConfig& numerics);
/// Starts from an arbitrary valid state, e.g. one species identically zero.
Trajectory run_P(const ModelParams& params, const SimState& start, const NumericsConfig& numerics);

Trajectory run_Q(const ModelParams& params, const ProblemQData& init, const NumericsConfig& numerics);

}  // namespace fbm
