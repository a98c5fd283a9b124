#include "fbm/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "fbm/semiwave.hpp"

namespace fbm {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

double rel(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

template <typename Body>
CriterionResult criterion(int id, const std::string& name, Body body,
                          double time_limit = std::numeric_limits<double>::infinity()) {
  CriterionResult row;
  row.id = id;
  row.name = name;
  const auto start = Clock::now();
  try {
    body(row);
  } catch (const std::exception& e) {
    row.passed = false;
    row.detail = std::string("error: ") + e.what();
  }
  row.seconds = seconds_since(start);
  if (row.seconds > time_limit) {
    row.passed = false;
    row.detail += ", over the " + fmt(time_limit) + " s limit";
  }
  return row;
}

// --- fast criteria -----------------------------------------------------------------------

CriterionResult r_star_exactness(const VerifyOptions& options) {
  return criterion(1, "r_star_exactness", [&](CriterionResult& row) {
    const double expected[] = {std::numbers::pi / 2.0, 2.404825557695773, std::numbers::pi};
    const double tol[] = {1e-10, 1e-8, 1e-10};
    row.passed = true;
    std::string detail;
    for (int N = 1; N <= 3; ++N) {
      const double value = options.r_star_override ? *options.r_star_override : compute_R_star(N);
      const double err = std::abs(value - expected[N - 1]);
      row.metrics["N" + std::to_string(N)] = {{"R_star", value}, {"abs_err", err}};
      row.passed = row.passed && err <= tol[N - 1];
      detail += "N=" + std::to_string(N) + " err " + fmt(err) + (N < 3 ? ", " : "");
    }
    row.detail = detail;
  }, 1.0);
}

CriterionResult scalar_anchor() {
  return criterion(2, "scalar_semiwave_anchor", [](CriterionResult& row) {
    std::mt19937_64 rng(20240602);
    std::uniform_real_distribution<double> pick(0.5, 2.0);
    double worst = 0.0;
    row.metrics["cases"] = Json::array();
    for (int i = 0; i < 5; ++i) {
      const double a = pick(rng), b = pick(rng), d = pick(rng);
      const ScalarSemiWaveSolution sol = solve_scalar_semiwave(ScalarSemiWaveSpec::with_defaults(a, b, d, 0.0));
      const double exact = std::pow(a, 1.5) / (std::sqrt(3.0 * d) * b);
      const double err = rel(std::abs(sol.slope_at_front), exact);
      worst = std::max(worst, err);
      row.metrics["cases"].push_back({{"a", a}, {"b", b}, {"d", d}, {"rel_err", err}});
    }
    row.metrics["worst_rel_err"] = worst;
    row.passed = worst < 1e-4;
    row.detail = "worst rel err " + fmt(worst);
  }, 5.0);
}

CriterionResult s_star_scaling() {
  return criterion(3, "s_star_scaling", [](CriterionResult& row) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pick(0.5, 2.0);
    std::uniform_real_distribution<double> pick_mu(0.1, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double a = pick(rng), b = pick(rng), d = pick(rng), mu = pick_mu(rng);
      const double lhs = compute_s_star(a, b, d, mu);
      const double rhs = std::sqrt(a * d) * compute_s_star(1.0, 1.0, 1.0, mu * a / (b * d));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    const double small = compute_s_star(1.0, 1.0, 1.0, 0.01);
    const double asymptote = 0.01 / std::sqrt(3.0);
    const double small_err = rel(small, asymptote);
    row.metrics = {{"worst_identity_err", worst}, {"s_star_mu_0.01", small}, {"asymptote_rel_err", small_err}};
    row.passed = worst < 1e-6 && small_err < 0.05;
    row.detail = "identity err " + fmt(worst) + ", small-mu rel err " + fmt(small_err);
  }, 30.0);
}

CriterionResult decoupling() {
  return criterion(4, "decoupling_and_bounds", [](CriterionResult& row) {
    const ModelParams sets[] = {
        {1.0, 1.0, 2.0, 0.0, 1.0, 1.0, 1},
        {0.5, 2.0, 3.0, 0.0, 2.0, 1.0, 1},
        {2.0, 0.5, 1.5, 0.0, 0.3, 1.0, 1},
    };
    double worst = 0.0;
    bool bounds = true;
    for (const ModelParams& p : sets) {
      const double c = compute_c_star(p);
      const double s = compute_s_star(p.r, p.r, p.d, p.mu1);
      worst = std::max(worst, std::abs(c - s));
      bounds = bounds && c > 0.0 && c < 2.0 * std::sqrt(p.r * p.d) && s > 0.0 && s < 2.0 * std::sqrt(p.r * p.d);
      row.metrics["cases"].push_back({{"params", to_json(p)}, {"c_star", c}, {"s_star", s}});
    }
    ModelParams weak_strong;
    const double c = compute_c_star(weak_strong);
    const double s = compute_s_star(1.0, 1.0, 1.0, weak_strong.mu2);
    bounds = bounds && c > 0.0 && c < 2.0 && s > 0.0 && s < 2.0;
    row.metrics["worst_abs_err"] = worst;
    row.metrics["bounds_hold"] = bounds;
    row.passed = worst < 1e-6 && bounds;
    row.detail = "worst |c* - s*| " + fmt(worst) + (bounds ? ", bounds hold" : ", bound violated");
  }, 60.0);
}

CriterionResult ladders() {
  return criterion(5, "monotonicity_ladders", [](CriterionResult& row) {
    const double mus[] = {0.1, 0.5, 1.0, 5.0, 20.0};
    std::vector<double> c_values, s_values;
    for (double mu : mus) {
      ModelParams p;
      p.mu1 = mu;
      c_values.push_back(compute_c_star(p));
      s_values.push_back(compute_s_star(1.0, 1.0, 1.0, mu));
    }
    bool increasing = true;
    for (size_t i = 1; i < c_values.size(); ++i) {
      increasing = increasing && c_values[i] > c_values[i - 1] && s_values[i] > s_values[i - 1];
    }
    row.metrics = {{"mu", mus}, {"c_star", c_values}, {"s_star", s_values}};
    row.passed = increasing;
    row.detail = increasing ? "both ladders strictly increasing" : "ladder not strictly increasing";
  }, 120.0);
}

// --- PDE runs ----------------------------------------------------------------------------

struct Run {
  Run(std::string name_, std::function<Trajectory()> body_) : name(std::move(name_)), body(std::move(body_)) {}

  std::string name;
  std::function<Trajectory()> body;
  std::optional<Trajectory> traj;
  std::string error;
  double seconds = 0.0;
};

void execute(std::vector<Run>& runs, int jobs) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < runs.size(); i = next++) {
      const auto start = Clock::now();
      try {
        runs[i].traj = runs[i].body();
      } catch (const std::exception& e) {
        runs[i].error = e.what();
      }
      runs[i].seconds = seconds_since(start);
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(runs.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

const Trajectory& need(const Run& run) {
  if (!run.traj) throw Error(ErrorKind::InvalidState, run.name + " run failed: " + run.error);
  return *run.traj;
}

InitialData bump_data(double s1_0, double s2_0, double u_amp, double v_amp) {
  InitialData init;
  init.s1_0 = s1_0;
  init.s2_0 = s2_0;
  init.u0 = raised_cosine(u_amp, 801);
  init.v0 = raised_cosine(v_amp, 801);
  return init;
}

/// Small two-front problem used for refinement and ordering checks.
ModelParams hygiene_params() { return ModelParams{}; }

/// Refinement ladder (dt / 2, 2 n) from n = 256, dt = 0.05.
NumericsConfig hygiene_numerics(int level) {
  NumericsConfig nc;
  nc.n_cells = 256 << level;
  nc.dt = 0.05 / (1 << level);
  nc.t_end = 8.0;
  nc.snapshot_every = 20 << level;
  return nc;
}

bool snapshots_clean(const Trajectory& traj, std::string& why) {
  for (const SimState& s : traj.snapshots) {
    if (s.U.minCoeff() < 0.0 || s.V.minCoeff() < 0.0) {
      why = "negative value at t = " + fmt(s.t);
      return false;
    }
  }
  for (size_t i = 1; i < traj.fronts.size(); ++i) {
    if (traj.fronts[i].s1 < traj.fronts[i - 1].s1 || traj.fronts[i].s2 < traj.fronts[i - 1].s2) {
      why = "front receded at t = " + fmt(traj.fronts[i].t);
      return false;
    }
  }
  return true;
}

void add_runs(std::vector<CriterionResult>& rows, int jobs) {
  const ScenarioSpec a2 = build_preset(Regime::weak_strong_A2);
  const ScenarioSpec q = build_preset(Regime::problem_Q);
  const ScenarioSpec tri[] = {build_preset(Regime::region_B_i), build_preset(Regime::region_B_ii),
                              build_preset(Regime::region_B_iii)};

  std::vector<Run> runs;
  runs.push_back({"weak_strong_A2", [&] { return run_P(a2.params, build_initial_data(a2), a2.numerics); }});
  runs.push_back({"problem_Q", [&] { return run_Q(q.params, build_Q_data(q), q.numerics); }});
  for (const ScenarioSpec& spec : tri) {
    runs.push_back({to_string(spec.regime),
                    [&spec] { return run_P(spec.params, build_initial_data(spec), spec.numerics); }});
  }
  for (int level = 0; level < 3; ++level) {
    runs.push_back({"refinement_" + std::to_string(level), [level] {
                      return run_P(hygiene_params(), bump_data(3.0, 4.0, 1.0, 1.0), hygiene_numerics(level));
                    }});
  }
  runs.push_back({"ordering_A", [] {
                    return run_P(hygiene_params(), bump_data(3.0, 4.0, 1.0, 0.6), hygiene_numerics(1));
                  }});
  runs.push_back({"ordering_B", [] {
                    return run_P(hygiene_params(), bump_data(3.0, 4.0, 0.7, 1.0), hygiene_numerics(1));
                  }});
  execute(runs, jobs);
  const Run& run_a2 = runs[0];
  const Run& run_q = runs[1];

  rows.push_back(criterion(6, "two_speeds", [&](CriterionResult& row) {
    const Trajectory& traj = need(run_a2);
    const double c = compute_c_star(a2.params);
    const double s = compute_s_star(1.0, 1.0, 1.0, a2.params.mu2);
    const SpeedReport u = speed_report(traj, Species::U, c);
    const SpeedReport v = speed_report(traj, Species::V, s);
    row.metrics = {{"u", to_json(u)}, {"v", to_json(v)}, {"run_seconds", run_a2.seconds}};
    row.passed = u.rel_err < 0.05 && v.rel_err < 0.05;
    row.detail = "s1 slope " + fmt(u.fit.slope) + " vs c* " + fmt(c) + ", s2 slope " + fmt(v.fit.slope) +
                 " vs s* " + fmt(s);
  }));

  rows.push_back(criterion(7, "segregation", [&](CriterionResult& row) {
    const Trajectory& traj = need(run_a2);
    const double c = compute_c_star(a2.params);
    const double s = compute_s_star(1.0, 1.0, 1.0, a2.params.mu2);
    const SegregationMetrics m = segregation_metrics(traj.snapshots.back(), c, s, 0.1);
    row.metrics = to_json(m);
    row.passed = m.u_deviation_inner < 0.05 && m.v_deviation_band < 0.05 && m.v_inner < 0.05;
    row.detail = "sup|u-1| " + fmt(m.u_deviation_inner) + ", sup|v-1| " + fmt(m.v_deviation_band) +
                 ", sup v " + fmt(m.v_inner);
  }));

  rows.push_back(criterion(8, "single_front_speed", [&](CriterionResult& row) {
    const Trajectory& traj = need(run_q);
    const double c = compute_c_star(q.params);
    const SimState& last = traj.snapshots.back();
    const double ratio = last.s1 / last.t;
    const SpeedFit fit = fit_front_speed(traj, Species::U);
    const double u0 = last.U(0), v0 = last.V(0);
    row.metrics = {{"c_star", c}, {"h_over_t", ratio}, {"slope", fit.slope}, {"u_at_0", u0},
                   {"v_at_0", v0}, {"run_seconds", run_q.seconds}};
    row.passed = rel(ratio, c) < 0.05 && rel(fit.slope, c) < 0.05 && std::abs(u0 - 1.0) < 0.05 &&
                 std::abs(v0) < 0.05;
    row.detail = "h/t " + fmt(ratio) + ", slope " + fmt(fit.slope) + " vs c* " + fmt(c) + ", (u,v)(0) = (" +
                 fmt(u0) + ", " + fmt(v0) + ")";
  }));

  rows.push_back(criterion(9, "trichotomy", [&](CriterionResult& row) {
    const std::pair<Status, Status> expected[] = {{Status::Vanishes, Status::Vanishes},
                                                  {Status::Vanishes, Status::Spreads},
                                                  {Status::Spreads, Status::Vanishes}};
    row.passed = true;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
      const Run& run = runs[2 + i];
      const Outcome o = classify_outcome(need(run));
      const bool ok = o.u.status == expected[i].first && o.v.status == expected[i].second;
      const bool both_spread = o.u.status == Status::Spreads && o.v.status == Status::Spreads;
      row.passed = row.passed && ok && !both_spread;
      row.metrics[run.name] = to_json(o);
      detail += run.name + ": u " + to_string(o.u.status) + ", v " + to_string(o.v.status) + (i < 2 ? "; " : "");
    }
    row.detail = detail;
  }));

  rows.push_back(criterion(10, "numerical_hygiene", [&](CriterionResult& row) {
    const Trajectory& c0 = need(runs[5]);
    const Trajectory& c1 = need(runs[6]);
    const Trajectory& c2 = need(runs[7]);
    const double p1 = richardson_order(c0.fronts.back().s1, c1.fronts.back().s1, c2.fronts.back().s1);
    const double p2 = richardson_order(c0.fronts.back().s2, c1.fronts.back().s2, c2.fronts.back().s2);
    const bool order_ok = p1 >= 0.8 && p2 >= 0.8;

    bool clean = true;
    std::string why;
    for (const Run& run : runs) {
      if (!snapshots_clean(need(run), why)) {
        clean = false;
        why = run.name + ": " + why;
        break;
      }
    }

    const Trajectory& A = need(runs[8]);
    const Trajectory& B = need(runs[9]);
    bool ordered = A.fronts.size() == B.fronts.size();
    for (size_t i = 0; ordered && i < A.fronts.size(); ++i) {
      ordered = A.fronts[i].s1 >= B.fronts[i].s1 && A.fronts[i].s2 <= B.fronts[i].s2;
    }
    row.metrics = {{"order_s1", p1}, {"order_s2", p2}, {"snapshots_clean", clean}, {"ordering_holds", ordered}};
    row.passed = order_ok && clean && ordered;
    row.detail = "order s1 " + fmt(p1) + ", s2 " + fmt(p2) + (clean ? ", snapshots clean" : ", " + why) +
                 (ordered ? ", ordering holds" : ", ordering violated");
  }));
}

}  // namespace

double richardson_order(double coarse, double mid, double fine) {
  return std::log2(std::abs(coarse - mid) / std::abs(mid - fine));
}

bool VerifyReport::all_passed() const {
  for (const CriterionResult& row : rows) {
    if (!row.passed) return false;
  }
  return !rows.empty();
}

Json VerifyReport::to_json() const {
  Json j;
  j["level"] = level == VerifyLevel::Fast ? "fast" : "full";
  j["passed"] = all_passed();
  j["criteria"] = Json::array();
  for (const CriterionResult& row : rows) {
    j["criteria"].push_back({{"id", row.id}, {"name", row.name}, {"status", row.passed ? "pass" : "fail"},
                             {"detail", row.detail}, {"metrics", row.metrics}});
  }
  return j;
}

std::string VerifyReport::table() const {
  std::ostringstream out;
  for (const CriterionResult& row : rows) {
    char head[64];
    std::snprintf(head, sizeof(head), "%s  %2d  %-24s ", row.passed ? "PASS" : "FAIL", row.id, row.name.c_str());
    out << head << row.detail << '\n';
  }
  return out.str();
}

VerifyReport run_verify(const VerifyOptions& options) {
  VerifyReport report;
  report.level = options.level;
  report.rows.push_back(r_star_exactness(options));
  report.rows.push_back(scalar_anchor());
  report.rows.push_back(s_star_scaling());
  report.rows.push_back(decoupling());
  report.rows.push_back(ladders());
  if (options.level == VerifyLevel::Full) add_runs(report.rows, options.jobs);
  return report;
}

}  // namespace fbm
