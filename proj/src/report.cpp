#include "fbm/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "fbm/semiwave.hpp"

namespace fbm {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json to_json(const SpeciesOutcome& s) {
  Json j;
  j["status"] = to_string(s.status);
  j["initial_front"] = s.initial_front;
  j["final_front"] = s.final_front;
  j["front_growth"] = s.front_growth;
  j["final_sup"] = s.final_sup;
  j["min_plateau"] = s.min_plateau;
  return j;
}

}  // namespace

void write_fronts_csv(std::ostream& out, const Trajectory& traj) {
  out << kFrontHeader << '\n';
  for (const FrontSample& f : traj.fronts) {
    out << fmt(f.t) << ',' << fmt(f.s1) << ',' << fmt(f.s2) << ',' << fmt(f.s1_dot) << ','
        << fmt(f.s2_dot) << '\n';
  }
}

void write_snapshot_csv(std::ostream& out, const SimState& state) {
  out << kSnapshotHeader << '\n';
  const Vector R = straightened_grid(static_cast<int>(state.U.size()) - 1);
  for (Eigen::Index j = 0; j < R.size(); ++j) {
    out << fmt(R(j)) << ',' << fmt(R(j) * state.s1) << ',' << fmt(state.U(j)) << ','
        << fmt(R(j) * state.s2) << ',' << fmt(state.V(j)) << '\n';
  }
}

Json to_json(const SpeedReport& report) {
  Json j;
  j["species"] = to_string(report.species);
  j["slope"] = report.fit.slope;
  j["predicted"] = report.predicted;
  j["rel_err"] = report.rel_err;
  j["status"] = report.rel_err < 0.05 ? "pass" : "fail";
  j["metrics"] = {{"intercept", report.fit.intercept},
                  {"t_lo", report.fit.t_lo},
                  {"t_hi", report.fit.t_hi},
                  {"max_residual", report.fit.max_residual},
                  {"points", report.fit.points}};
  return j;
}

Json to_json(const SegregationMetrics& m) {
  Json j;
  j["eps"] = m.eps;
  j["t"] = m.t;
  j["u_deviation_inner"] = m.u_deviation_inner;
  j["v_deviation_band"] = m.v_deviation_band;
  j["v_inner"] = m.v_inner;
  return j;
}

Json to_json(const Outcome& outcome) {
  Json j;
  j["u"] = to_json(outcome.u);
  j["v"] = to_json(outcome.v);
  return j;
}

Json to_json(const ModelParams& p) {
  return Json{{"d", p.d}, {"r", p.r}, {"h", p.h}, {"k", p.k},
              {"mu1", p.mu1}, {"mu2", p.mu2}, {"N", p.N}};
}

Json constants_report(const ModelParams& params) {
  params.validate();
  if (!params.weak_strong()) {
    throw Error(ErrorKind::InvalidSpec, "weak-strong condition 0<k<1<h violated (k = " +
                                            fmt(params.k) + ", h = " + fmt(params.h) + ")");
  }
  const RegimeReport regime = validate_regime(params);
  const TrichotomyThresholds th = trichotomy_thresholds(params);
  Json j;
  j["params"] = to_json(params);
  j["c_star"] = optional_number(regime.c_star);
  j["s_star"] = optional_number(regime.s_star);
  j["R_star"] = compute_R_star(params.N);
  j["margin"] = optional_number(regime.margin);
  j["regime"] = regime.regime;
  j["a2"] = regime.a2;
  j["kpp_speed_bound"] = regime.kpp_speed_bound;
  j["kpp_bound_below_s_star"] = regime.kpp_bound_below_s_star;
  j["thresholds"] = {{"s_star_low", th.s_star_low},
                     {"s_star_mid", th.s_star_mid},
                     {"s_star_v", th.s_star_v}};
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace fbm
