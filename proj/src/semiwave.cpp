#include "fbm/semiwave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "fbm/tridiagonal.hpp"

namespace fbm {
namespace {

constexpr double kNewtonTol = 1e-10;
constexpr int kNewtonMaxIter = 60;
constexpr double kSweepTol = 1e-9;
constexpr int kMaxSweeps = 2000;

// D y'' + c y' + y (alpha - beta y) = 0 at interior nodes, Dirichlet values at both ends.
struct ThreePointBvp {
  Vector lo, mid, up;  // linear stencil of D y'' + c y'
  Vector alpha;
  double beta = 0.0;
  double left = 0.0;
  double right = 0.0;
};

// Second-order central differences on a (possibly non-uniform) grid; the drift falls back
// to upwinding where the cell Peclet number reaches 1.
ThreePointBvp assemble(const Vector& x, double diffusion, double drift) {
  const Eigen::Index n = x.size();
  ThreePointBvp bvp;
  bvp.lo = Vector::Zero(n);
  bvp.mid = Vector::Zero(n);
  bvp.up = Vector::Zero(n);
  bvp.alpha = Vector::Zero(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    const double hm = x(i) - x(i - 1);
    const double hp = x(i + 1) - x(i);
    const double hs = hm + hp;
    double lo = 2.0 * diffusion / (hm * hs);
    double up = 2.0 * diffusion / (hp * hs);
    double mid = -lo - up;
    const double peclet = std::abs(drift) * std::max(hm, hp) / (2.0 * diffusion);
    if (peclet < 1.0) {
      lo += -drift * hp / (hm * hs);
      up += drift * hm / (hp * hs);
      mid += drift * (hp - hm) / (hm * hp);
    } else if (drift > 0.0) {
      up += drift / hp;
      mid -= drift / hp;
    } else {
      lo += drift / hm;
      mid -= drift / hm;
    }
    bvp.lo(i) = lo;
    bvp.mid(i) = mid;
    bvp.up(i) = up;
  }
  return bvp;
}

Vector residual(const ThreePointBvp& bvp, const Vector& y) {
  const Eigen::Index n = y.size();
  Vector f = Vector::Zero(n);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    f(i) = bvp.lo(i) * y(i - 1) + bvp.mid(i) * y(i) + bvp.up(i) * y(i + 1) +
           y(i) * (bvp.alpha(i) - bvp.beta * y(i));
  }
  return f;
}

struct NewtonOutcome {
  bool converged = false;
  double residual = 0.0;
  int iterations = 0;
};

// Damped Newton with backtracking on the sup-norm residual.
NewtonOutcome newton(const ThreePointBvp& bvp, Vector& y) {
  const Eigen::Index n = y.size();
  y(0) = bvp.left;
  y(n - 1) = bvp.right;
  Vector f = residual(bvp, y);
  double norm = f.lpNorm<Eigen::Infinity>();
  NewtonOutcome out;
  Tridiagonal<double> jac(n);
  for (int it = 0; it < kNewtonMaxIter; ++it) {
    if (norm < kNewtonTol) {
      out.converged = true;
      break;
    }
    jac.diag(0) = 1.0;
    jac.diag(n - 1) = 1.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      jac.lower(i) = bvp.lo(i);
      jac.diag(i) = bvp.mid(i) + bvp.alpha(i) - 2.0 * bvp.beta * y(i);
      jac.upper(i) = bvp.up(i);
    }
    const Vector delta = solve(jac, f);
    if (!delta.allFinite()) break;
    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, lambda *= 0.5) {
      Vector trial = y - lambda * delta;
      Vector f_trial = residual(bvp, trial);
      const double trial_norm = f_trial.lpNorm<Eigen::Infinity>();
      if (std::isfinite(trial_norm) && trial_norm < (1.0 - 1e-4 * lambda) * norm) {
        y = std::move(trial);
        f = std::move(f_trial);
        norm = trial_norm;
        accepted = true;
        break;
      }
    }
    out.iterations = it + 1;
    if (!accepted) break;
  }
  out.residual = norm;
  out.converged = out.converged || norm < kNewtonTol;
  return out;
}

// Pseudo-transient continuation: backward-Euler steps of y_t = F(y) with a step that grows
// as the residual falls.  Converges where plain Newton meets an ill-conditioned Jacobian.
NewtonOutcome pseudo_transient(const ThreePointBvp& bvp, Vector& y) {
  constexpr int kMaxSteps = 5000;
  const Eigen::Index n = y.size();
  y(0) = bvp.left;
  y(n - 1) = bvp.right;
  Vector f = residual(bvp, y);
  double norm = f.lpNorm<Eigen::Infinity>();
  double tau = 0.1;
  NewtonOutcome out;
  Tridiagonal<double> jac(n);
  for (int it = 0; it < kMaxSteps && norm >= kNewtonTol; ++it) {
    jac.diag(0) = 1.0;
    jac.diag(n - 1) = 1.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      jac.lower(i) = bvp.lo(i);
      jac.diag(i) = bvp.mid(i) + bvp.alpha(i) - 2.0 * bvp.beta * y(i) - 1.0 / tau;
      jac.upper(i) = bvp.up(i);
    }
    Vector trial = y - solve(jac, f);
    Vector f_trial = residual(bvp, trial);
    const double trial_norm = f_trial.lpNorm<Eigen::Infinity>();
    out.iterations = it + 1;
    if (!std::isfinite(trial_norm) || trial_norm > 2.0 * norm) {
      tau *= 0.25;
      if (tau < 1e-12) break;
      continue;
    }
    tau = std::min(tau * std::clamp(norm / trial_norm, 0.5, 4.0), 1e12);
    y = std::move(trial);
    f = std::move(f_trial);
    norm = trial_norm;
  }
  out.residual = norm;
  out.converged = norm < kNewtonTol;
  return out;
}

// Newton first; pseudo-transient continuation from the original guess when it stalls.
NewtonOutcome solve_bvp(const ThreePointBvp& bvp, Vector& y) {
  Vector start = y;
  NewtonOutcome out = newton(bvp, y);
  if (out.converged) return out;
  y = std::move(start);
  out = pseudo_transient(bvp, y);
  if (!out.converged) return out;
  // Polish.
  const NewtonOutcome polish = newton(bvp, y);
  out.residual = polish.residual;
  out.iterations += polish.iterations;
  return out;
}

double one_sided_slope_right(const Vector& x, const Vector& y, Eigen::Index i) {
  // Second-order backward difference at node i, uniform spacing assumed.
  const double dx = x(i) - x(i - 1);
  return (3.0 * y(i) - 4.0 * y(i - 1) + y(i - 2)) / (2.0 * dx);
}

Vector uniform_grid(double from, double to, int cells) {
  return Vector::LinSpaced(cells + 1, from, to);
}

ThreePointBvp scalar_bvp(const ScalarSemiWaveSpec& spec, const Vector& xi) {
  ThreePointBvp bvp = assemble(xi, spec.d, spec.s);
  bvp.alpha.setConstant(spec.a);
  bvp.beta = spec.b;
  bvp.left = spec.a / spec.b;
  bvp.right = 0.0;
  return bvp;
}

Vector scalar_guess(const ScalarSemiWaveSpec& spec, const Vector& xi) {
  const double kappa = std::sqrt(spec.a / spec.d);
  return ((spec.a / spec.b) * (1.0 - (kappa * xi.array()).exp())).matrix();
}

ScalarSemiWaveSolution finish_scalar(Vector xi, Vector q,
                                     const NewtonOutcome& nw) {
  ScalarSemiWaveSolution sol;
  sol.slope_at_front = one_sided_slope_right(xi, q, xi.size() - 1);
  sol.xi = std::move(xi);
  sol.q = std::move(q);
  sol.converged = nw.converged;
  sol.residual = nw.residual;
  sol.iterations = nw.iterations;
  return sol;
}

}  // namespace

ScalarSemiWaveSpec ScalarSemiWaveSpec::with_defaults(double a, double b, double d, double s) {
  ScalarSemiWaveSpec spec;
  spec.a = a;
  spec.b = b;
  spec.d = d;
  spec.s = s;
  const Truncation trunc;
  spec.L = trunc.decay_lengths * std::sqrt(d / a);
  spec.n = static_cast<int>(trunc.decay_lengths * trunc.cells_per_length);
  return spec;
}

void ScalarSemiWaveSpec::validate() const {
  if (!(a > 0.0 && b > 0.0 && d > 0.0 && L > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "scalar semi-wave needs a, b, d, L > 0");
  }
  if (n < 16) throw Error(ErrorKind::InvalidSpec, "scalar semi-wave needs n >= 16");
  if (!(s >= 0.0 && s < 2.0 * std::sqrt(a * d))) {
    throw Error(ErrorKind::InvalidSpec, "scalar semi-wave speed must lie in [0, 2 sqrt(ad))");
  }
}

ScalarSemiWaveSolution solve_scalar_semiwave(const ScalarSemiWaveSpec& spec, const Vector& guess) {
  spec.validate();
  Vector xi = uniform_grid(-spec.L, 0.0, spec.n);
  if (guess.size() != xi.size()) {
    throw Error(ErrorKind::InvalidSpec, "initial guess does not match the grid");
  }
  const ThreePointBvp bvp = scalar_bvp(spec, xi);
  Vector q = guess;
  const NewtonOutcome nw = solve_bvp(bvp, q);
  if (!nw.converged) {
    throw Error(ErrorKind::NonConvergence,
                "scalar semi-wave Newton stalled at residual " + std::to_string(nw.residual));
  }
  return finish_scalar(std::move(xi), std::move(q), nw);
}

ScalarSemiWaveSolution solve_scalar_semiwave(const ScalarSemiWaveSpec& spec) {
  spec.validate();
  const Vector xi = uniform_grid(-spec.L, 0.0, spec.n);
  try {
    return solve_scalar_semiwave(spec, scalar_guess(spec, xi));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NonConvergence || spec.s == 0.0) throw;
  }
  // Continuation in the speed from the drift-free problem.
  ScalarSemiWaveSpec stage = spec;
  stage.s = 0.0;
  ScalarSemiWaveSolution sol = solve_scalar_semiwave(stage, scalar_guess(stage, xi));
  constexpr int kStages = 20;
  for (int i = 1; i <= kStages; ++i) {
    stage.s = spec.s * i / kStages;
    sol = solve_scalar_semiwave(stage, sol.q);
  }
  return sol;
}

double compute_s_star(double a, double b, double d, double mu, double tol, Truncation trunc) {
  if (!(a > 0.0 && b > 0.0 && d > 0.0 && mu > 0.0 && tol > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "compute_s_star needs positive a, b, d, mu, tol");
  }
  ScalarSemiWaveSpec spec = ScalarSemiWaveSpec::with_defaults(a, b, d, 0.0);
  spec.L = trunc.decay_lengths * std::sqrt(d / a);
  spec.n = static_cast<int>(trunc.decay_lengths * trunc.cells_per_length);

  const double s_max = 2.0 * std::sqrt(a * d);
  double lo = 0.0;
  double hi = s_max * (1.0 - 1e-9);

  spec.s = lo;
  ScalarSemiWaveSolution at_lo = solve_scalar_semiwave(spec);
  auto phi = [&](const ScalarSemiWaveSolution& sol, double s) {
    return mu * std::abs(sol.slope_at_front) - s;
  };
  if (!(phi(at_lo, lo) > 0.0)) {
    throw Error(ErrorKind::BracketFailure, "phi(0) is not positive");
  }
  spec.s = hi;
  const ScalarSemiWaveSolution at_hi = solve_scalar_semiwave(spec);
  if (!(phi(at_hi, hi) < 0.0)) {
    throw Error(ErrorKind::BracketFailure,
                "phi does not change sign below 2 sqrt(ad); increase the truncation length");
  }

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    spec.s = mid;
    ScalarSemiWaveSolution sol;
    try {
      sol = solve_scalar_semiwave(spec, at_lo.q);
    } catch (const Error&) {
      sol = solve_scalar_semiwave(spec);
    }
    const double value = phi(sol, mid);
    if (value > 0.0) {
      lo = mid;
      at_lo = std::move(sol);
    } else {
      hi = mid;
    }
    if (hi - lo < tol && std::abs(value) < tol) return mid;
    if (hi - lo < 1e-15 * s_max) break;
  }
  if (hi - lo < tol) return 0.5 * (lo + hi);
  throw Error(ErrorKind::NonConvergence, "s* bisection did not settle");
}

// ---------------------------------------------------------------------------------------------

CoupledSemiWaveSpec CoupledSemiWaveSpec::with_defaults(const ModelParams& params, double c,
                                                       Truncation trunc) {
  CoupledSemiWaveSpec spec;
  spec.d = params.d;
  spec.r = params.r;
  spec.h = params.h;
  spec.k = params.k;
  spec.c = c;
  // U's grid matches the scalar default for (a, b, d) = (r, r, d); V's slowest left decay
  // rate at c = 0 is sqrt(h - 1) and may demand an integer multiple of that length.
  const double base = trunc.decay_lengths * std::sqrt(params.d / params.r);
  const double v_decay = std::sqrt(std::max(params.h - 1.0, 1e-12));
  const double needed = trunc.decay_lengths / v_decay;
  const int multiple = std::max(1, static_cast<int>(std::ceil(needed / base - 1e-12)));
  const int cells = static_cast<int>(trunc.decay_lengths * trunc.cells_per_length);
  spec.L_left = base * multiple;
  spec.n_left = cells * multiple;
  spec.L_right = trunc.decay_lengths;
  spec.n_right = cells;
  return spec;
}

void CoupledSemiWaveSpec::validate() const {
  if (!(d > 0.0 && r > 0.0)) throw Error(ErrorKind::InvalidSpec, "coupled semi-wave needs d, r > 0");
  if (!(k >= 0.0 && k < 1.0 && h > 1.0)) {
    throw Error(ErrorKind::InvalidSpec, "coupled semi-wave needs 0 < k < 1 < h");
  }
  if (!(c >= 0.0)) throw Error(ErrorKind::InvalidSpec, "coupled semi-wave needs c >= 0");
  if (!(L_left > 0.0 && L_right > 0.0) || n_left < 16 || n_right < 16) {
    throw Error(ErrorKind::InvalidSpec, "coupled semi-wave truncation must be positive");
  }
}

namespace {

CoupledSemiWaveSolution initial_coupled(const CoupledSemiWaveSpec& spec) {
  CoupledSemiWaveSolution sol;
  sol.xi_u = uniform_grid(-spec.L_left, 0.0, spec.n_left);
  Vector right = uniform_grid(0.0, spec.L_right, spec.n_right);
  sol.xi_v.resize(sol.xi_u.size() + spec.n_right);
  sol.xi_v << sol.xi_u, right.tail(spec.n_right);
  sol.U = (-sol.xi_u.array() / 10.0).min(1.0).matrix();
  sol.V = (1.0 + sol.xi_v.array() / 10.0).max(0.0).min(1.0).matrix();
  return sol;
}

}  // namespace

CoupledSemiWaveSolution solve_coupled_semiwave(const CoupledSemiWaveSpec& spec,
                                               const CoupledSemiWaveSolution& guess) {
  spec.validate();
  CoupledSemiWaveSolution sol = initial_coupled(spec);
  if (guess.U.size() != sol.U.size() || guess.V.size() != sol.V.size()) {
    throw Error(ErrorKind::InvalidSpec, "initial guess does not match the grid");
  }
  sol.U = guess.U;
  sol.V = guess.V;
  const Eigen::Index nu = sol.xi_u.size();
  const Eigen::Index nv = sol.xi_v.size();

  ThreePointBvp u_bvp = assemble(sol.xi_u, spec.d, spec.c);
  u_bvp.beta = spec.r;
  u_bvp.left = 1.0;
  u_bvp.right = 0.0;
  ThreePointBvp v_bvp = assemble(sol.xi_v, 1.0, spec.c);
  v_bvp.beta = 1.0;
  v_bvp.left = 0.0;
  v_bvp.right = 1.0;

  double change = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const Vector U_prev = sol.U;
    const Vector V_prev = sol.V;

    u_bvp.alpha = (spec.r * (1.0 - spec.k * sol.V.head(nu).array())).matrix();
    const NewtonOutcome nu_out = solve_bvp(u_bvp, sol.U);
    if (!nu_out.converged) {
      throw Error(ErrorKind::NonConvergence, "coupled semi-wave: U sweep failed to converge");
    }
    v_bvp.alpha = Vector::Ones(nv);
    v_bvp.alpha.head(nu) -= spec.h * sol.U;
    const NewtonOutcome nv_out = solve_bvp(v_bvp, sol.V);
    if (!nv_out.converged) {
      throw Error(ErrorKind::NonConvergence, "coupled semi-wave: V sweep failed to converge");
    }
    sol.iterations = sweep + 1;
    change = std::max((sol.U - U_prev).lpNorm<Eigen::Infinity>(),
                      (sol.V - V_prev).lpNorm<Eigen::Infinity>());
    if (change < kSweepTol) {
      sol.converged = true;
      break;
    }
  }
  if (!sol.converged) {
    throw Error(ErrorKind::NonConvergence,
                "coupled semi-wave sweeps stalled at change " + std::to_string(change));
  }

  u_bvp.alpha = (spec.r * (1.0 - spec.k * sol.V.head(nu).array())).matrix();
  sol.residual = std::max(residual(u_bvp, sol.U).lpNorm<Eigen::Infinity>(),
                          residual(v_bvp, sol.V).lpNorm<Eigen::Infinity>());
  sol.slope_at_front = one_sided_slope_right(sol.xi_u, sol.U, nu - 1);
  const Eigen::Index half = nu / 2;
  sol.degenerate = sol.U.tail(nu - half).maxCoeff() < kDegenerateLevel;
  return sol;
}

CoupledSemiWaveSolution solve_coupled_semiwave(const CoupledSemiWaveSpec& spec) {
  spec.validate();
  return solve_coupled_semiwave(spec, initial_coupled(spec));
}

double compute_c_star(const ModelParams& params, double tol, Truncation trunc) {
  if (!(params.k >= 0.0 && params.k < 1.0 && params.h > 1.0)) {
    throw Error(ErrorKind::InvalidSpec, "c* requires 0 < k < 1 < h");
  }
  if (!(params.mu1 > 0.0 && tol > 0.0)) {
    throw Error(ErrorKind::InvalidSpec, "c* requires mu1 > 0 and tol > 0");
  }
  const double c_max = 2.0 * std::sqrt(params.r * params.d);
  CoupledSemiWaveSpec spec = CoupledSemiWaveSpec::with_defaults(params, 0.0, trunc);

  auto psi = [&](const CoupledSemiWaveSolution& sol, double c) {
    if (sol.degenerate) return -c;
    return params.mu1 * std::abs(sol.slope_at_front) - c;
  };

  double lo = 0.0;
  double hi = c_max;
  CoupledSemiWaveSolution at_lo = solve_coupled_semiwave(spec);
  if (!(psi(at_lo, lo) > 0.0)) throw Error(ErrorKind::BracketFailure, "psi(0) is not positive");
  spec.c = hi;
  {
    CoupledSemiWaveSolution at_hi = solve_coupled_semiwave(spec);
    if (!(psi(at_hi, hi) < 0.0)) {
      throw Error(ErrorKind::BracketFailure, "psi does not change sign on (0, 2 sqrt(rd))");
    }
  }

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    spec.c = mid;
    CoupledSemiWaveSolution sol;
    try {
      sol = solve_coupled_semiwave(spec, at_lo);
    } catch (const Error&) {
      sol = solve_coupled_semiwave(spec);
    }
    const double value = psi(sol, mid);
    if (value > 0.0) {
      lo = mid;
      at_lo = std::move(sol);
    } else {
      hi = mid;
    }
    if (hi - lo < tol && std::abs(value) < tol) return mid;
    if (hi - lo < 1e-15 * c_max) break;
  }
  if (hi - lo < tol) return 0.5 * (lo + hi);
  throw Error(ErrorKind::NonConvergence, "c* bisection did not settle");
}

std::pair<double, double> estimate_c0(const ModelParams& params, double step, Truncation trunc) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidSpec, "estimate_c0 needs step > 0");
  CoupledSemiWaveSpec spec = CoupledSemiWaveSpec::with_defaults(params, 0.0, trunc);
  double lo = 0.0;
  double hi = 2.0 * std::sqrt(params.r * params.d);
  CoupledSemiWaveSolution at_lo = solve_coupled_semiwave(spec);
  if (at_lo.degenerate) throw Error(ErrorKind::BracketFailure, "profile degenerate at c = 0");
  spec.c = hi;
  if (!solve_coupled_semiwave(spec).degenerate) {
    throw Error(ErrorKind::BracketFailure, "profile not degenerate at c = 2 sqrt(rd)");
  }
  while (hi - lo > step) {
    const double mid = 0.5 * (lo + hi);
    spec.c = mid;
    CoupledSemiWaveSolution sol;
    try {
      sol = solve_coupled_semiwave(spec, at_lo);
    } catch (const Error&) {
      sol = solve_coupled_semiwave(spec);
    }
    if (sol.degenerate) {
      hi = mid;
    } else {
      lo = mid;
      at_lo = std::move(sol);
    }
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------------------------

double compute_R_star(int N) {
  if (N < 1) throw Error(ErrorKind::InvalidSpec, "compute_R_star needs N >= 1");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  const double dim = N;
  auto rhs = [dim](const State& y, State& dy, double r) {
    dy[0] = y[1];
    dy[1] = -y[0] - (dim - 1.0) / r * y[1];
  };
  auto stepper = odeint::make_controlled(1e-15, 1e-15, odeint::runge_kutta_dopri5<State>());

  // Series start off the removable singularity at r = 0.
  const double r0 = 1e-4;
  State y{1.0 - r0 * r0 / (2.0 * dim) + std::pow(r0, 4) / (8.0 * dim * (dim + 2.0)),
          -r0 / dim + std::pow(r0, 3) / (2.0 * dim * (dim + 2.0))};
  auto advance = [&](State state, double from, double to) {
    odeint::integrate_adaptive(stepper, rhs, state, from, to, 1e-3);
    return state;
  };

  constexpr double kChunk = 0.05;
  double a = r0;
  State ya = y;
  for (;;) {
    const State yb = advance(ya, a, a + kChunk);
    if (yb[0] <= 0.0) break;
    a += kChunk;
    ya = yb;
  }
  double lo = a;
  double hi = a + kChunk;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (advance(ya, a, mid)[0] > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace fbm
