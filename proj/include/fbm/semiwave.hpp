#pragma once

#include <optional>
#include <utility>

#include "fbm/types.hpp"

namespace fbm {

// Semi-wave profiles and the spreading-speed constants they determine.
//
// Profiles live on a truncated half-line xi in [-L, 0] (plus [0, L_right] for the coupled
// V component) and are computed by damped Newton on second-order finite differences.

/// d q'' + s q' + q (a - b q) = 0 on (-L, 0), q(-L) = a/b, q(0) = 0.
struct ScalarSemiWaveSpec {
  double a = 1.0;
  double b = 1.0;
  double d = 1.0;
  double s = 0.0;
  double L = 40.0;
  int n = 4000;

  /// Truncation measured in decay lengths sqrt(d/a), so rescaled problems share a grid.
  static ScalarSemiWaveSpec with_defaults(double a, double b, double d, double s);
  void validate() const;
};

struct ScalarSemiWaveSolution {
  Vector xi;
  Vector q;
  double slope_at_front = 0.0;  ///< second-order one-sided q'(0)
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

ScalarSemiWaveSolution solve_scalar_semiwave(const ScalarSemiWaveSpec& spec);
/// Newton started from `guess` (same grid); used for continuation along a speed ladder.
ScalarSemiWaveSolution solve_scalar_semiwave(const ScalarSemiWaveSpec& spec, const Vector& guess);

/// Truncation shared by the speed computations below.
struct Truncation {
  double decay_lengths = 40.0;  ///< domain length in units of the slowest decay length
  int cells_per_length = 100;   ///< grid cells per decay length
};

/// The unique s in (0, 2 sqrt(ad)) with mu |q_s'(0)| = s, by bisection.
double compute_s_star(double a, double b, double d, double mu, double tol = 1e-8,
                      Truncation trunc = {});

/// Coupled system
///   c U' + d U'' + r U (1 - U - k V) = 0 on (-L_left, 0),   U(-L_left) = 1, U(0) = 0,
///   c V' + V'' + V (1 - V - h U) = 0 on (-L_left, L_right), V(-L_left) = 0, V(L_right) = 1,
/// with U extended by zero on [0, L_right].
struct CoupledSemiWaveSpec {
  double d = 1.0;
  double r = 1.0;
  double h = 2.0;
  double k = 0.5;
  double c = 0.0;
  double L_left = 40.0;
  double L_right = 40.0;
  int n_left = 4000;
  int n_right = 4000;

  static CoupledSemiWaveSpec with_defaults(const ModelParams& params, double c,
                                           Truncation trunc = {});
  void validate() const;
};

struct CoupledSemiWaveSolution {
  Vector xi_u;  ///< [-L_left, 0]
  Vector U;
  Vector xi_v;  ///< [-L_left, L_right]; the first xi_u.size() nodes coincide with xi_u
  Vector V;
  double slope_at_front = 0.0;  ///< U'(0)
  bool degenerate = false;
  bool converged = false;
  int iterations = 0;  ///< alternating sweeps
  double residual = 0.0;
};

/// Profiles in which U stays below this level on the half of the grid next to the front
/// are treated as having collapsed toward (0, 1).
inline constexpr double kDegenerateLevel = 1e-3;

CoupledSemiWaveSolution solve_coupled_semiwave(const CoupledSemiWaveSpec& spec);
CoupledSemiWaveSolution solve_coupled_semiwave(const CoupledSemiWaveSpec& spec,
                                               const CoupledSemiWaveSolution& guess);

/// The unique c in (0, c0) with mu1 |U_c'(0)| = c, by bisection on (0, 2 sqrt(rd)).
double compute_c_star(const ModelParams& params, double tol = 1e-8, Truncation trunc = {});

/// First zero of phi'' + (N-1)/r phi' + phi = 0, phi(0) = 1, phi'(0) = 0: the radius of the
/// ball whose principal Dirichlet eigenvalue is 1.
double compute_R_star(int N);

/// Bracket (c_lo, c_hi), c_hi - c_lo <= step, with a non-degenerate coupled profile at c_lo
/// and a degenerate one at c_hi.
std::pair<double, double> estimate_c0(const ModelParams& params, double step,
                                      Truncation trunc = {});

}  // namespace fbm
