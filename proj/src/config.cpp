#include "fbm/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace fbm {
namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kModelKeys = {"d", "r", "h", "k", "mu1", "mu2", "N"};
const std::set<std::string> kScenarioKeys = {"preset", "s1_0", "s2_0", "x0", "L", "pad",
                                             "u_amplitude", "v_amplitude", "h0", "L_domain",
                                             "v_level", "samples"};
const std::set<std::string> kNumericsKeys = {"n_cells", "dt", "scheme", "snapshot_every", "t_end"};
const std::set<std::string> kOutputKeys = {"dir", "fronts", "snapshots", "reports"};
const std::set<std::string> kSweepKeys = {"param", "values", "simulate"};

std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

double parse_double(const std::string& key, const std::string& text) {
  double x = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) {
    throw Error(ErrorKind::InvalidConfig, "key '" + key + "': not a number: '" + text + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& text) {
  int x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidConfig, "key '" + key + "': not an integer: '" + text + "'");
  }
  return x;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw Error(ErrorKind::InvalidConfig, "key '" + key + "': not a boolean: '" + text + "'");
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_double(values[i]);
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (!token.empty() && token.back() == ',') token.pop_back();
    if (!token.empty()) out.push_back(parse_double(key, token));
  }
  return out;
}

void check_keys(const pt::ptree& section, const std::string& name,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : section) {
    if (!allowed.count(key)) {
      throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "' in [" + name + "]");
    }
    (void)value;
  }
}

template <typename Fn>
void for_key(const pt::ptree& tree, const std::string& section, const std::string& key, Fn fn) {
  if (auto sec = tree.get_child_optional(section)) {
    if (auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'))) fn(*v);
  }
}

}  // namespace

double& param_by_name(ModelParams& params, const std::string& name) {
  if (name == "d") return params.d;
  if (name == "r") return params.r;
  if (name == "h") return params.h;
  if (name == "k") return params.k;
  if (name == "mu1") return params.mu1;
  if (name == "mu2") return params.mu2;
  throw Error(ErrorKind::InvalidConfig, "unknown model parameter '" + name + "'");
}

bool RunConfig::operator==(const RunConfig& o) const { return to_text(*this) == to_text(o); }

RunConfig config_for_preset(Regime regime) {
  RunConfig config;
  config.scenario = build_preset(regime);
  return config;
}

RunConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorKind::InvalidConfig, e.what());
  }
  const std::map<std::string, const std::set<std::string>*> sections = {
      {"model", &kModelKeys},   {"scenario", &kScenarioKeys}, {"numerics", &kNumericsKeys},
      {"output", &kOutputKeys}, {"sweep", &kSweepKeys}};
  for (const auto& [name, section] : tree) {
    auto it = sections.find(name);
    if (it == sections.end()) throw Error(ErrorKind::InvalidConfig, "unknown section [" + name + "]");
    check_keys(section, name, *it->second);
  }

  Regime regime = Regime::weak_strong_A2;
  for_key(tree, "scenario", "preset", [&](const std::string& v) { regime = regime_from_string(v); });
  RunConfig config = config_for_preset(regime);
  ScenarioSpec& sc = config.scenario;

  for (const char* key : {"d", "r", "h", "k", "mu1", "mu2"}) {
    for_key(tree, "model", key,
            [&](const std::string& v) { param_by_name(sc.params, key) = parse_double(key, v); });
  }
  for_key(tree, "model", "N", [&](const std::string& v) { sc.params.N = parse_int("N", v); });

  Recipe& rc = sc.recipe;
  const std::pair<const char*, double*> recipe_fields[] = {
      {"s1_0", &rc.s1_0}, {"s2_0", &rc.s2_0}, {"x0", &rc.x0}, {"L", &rc.L}, {"pad", &rc.pad},
      {"u_amplitude", &rc.u_amplitude}, {"v_amplitude", &rc.v_amplitude}, {"h0", &rc.h0},
      {"L_domain", &rc.L_domain}, {"v_level", &rc.v_level}};
  for (const auto& [key, field] : recipe_fields) {
    for_key(tree, "scenario", key, [&](const std::string& v) { *field = parse_double(key, v); });
  }
  for_key(tree, "scenario", "samples",
          [&](const std::string& v) { rc.samples = parse_int("samples", v); });

  NumericsConfig& nc = sc.numerics;
  for_key(tree, "numerics", "n_cells", [&](const std::string& v) { nc.n_cells = parse_int("n_cells", v); });
  for_key(tree, "numerics", "dt", [&](const std::string& v) { nc.dt = parse_double("dt", v); });
  for_key(tree, "numerics", "t_end", [&](const std::string& v) { nc.t_end = parse_double("t_end", v); });
  for_key(tree, "numerics", "snapshot_every",
          [&](const std::string& v) { nc.snapshot_every = parse_int("snapshot_every", v); });
  for_key(tree, "numerics", "scheme", [&](const std::string& v) {
    if (v == "imex") {
      nc.scheme = Scheme::Imex;
    } else if (v == "explicit") {
      nc.scheme = Scheme::Explicit;
    } else {
      throw Error(ErrorKind::InvalidConfig, "scheme must be imex or explicit");
    }
  });

  for_key(tree, "output", "dir", [&](const std::string& v) { config.output.dir = v; });
  for_key(tree, "output", "fronts", [&](const std::string& v) { config.output.fronts = parse_bool("fronts", v); });
  for_key(tree, "output", "snapshots",
          [&](const std::string& v) { config.output.snapshots = parse_bool("snapshots", v); });
  for_key(tree, "output", "reports", [&](const std::string& v) { config.output.reports = parse_bool("reports", v); });

  for_key(tree, "sweep", "param", [&](const std::string& v) {
    ModelParams probe;
    param_by_name(probe, v);
    config.sweep.param = v;
  });
  for_key(tree, "sweep", "values", [&](const std::string& v) { config.sweep.values = parse_list("values", v); });
  for_key(tree, "sweep", "simulate",
          [&](const std::string& v) { config.sweep.simulate = parse_bool("simulate", v); });

  nc.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_text(const RunConfig& config) {
  const ScenarioSpec& sc = config.scenario;
  const Recipe& rc = sc.recipe;
  const NumericsConfig& nc = sc.numerics;
  std::ostringstream out;
  auto kv = [&](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  auto num = [&](const char* key, double value) { kv(key, format_double(value)); };
  auto flag = [&](const char* key, bool value) { kv(key, value ? "true" : "false"); };

  out << "[model]\n";
  num("d", sc.params.d);
  num("r", sc.params.r);
  num("h", sc.params.h);
  num("k", sc.params.k);
  num("mu1", sc.params.mu1);
  num("mu2", sc.params.mu2);
  kv("N", std::to_string(sc.params.N));

  out << "\n[scenario]\n";
  kv("preset", to_string(sc.regime));
  num("s1_0", rc.s1_0);
  num("s2_0", rc.s2_0);
  num("x0", rc.x0);
  num("L", rc.L);
  num("pad", rc.pad);
  num("u_amplitude", rc.u_amplitude);
  num("v_amplitude", rc.v_amplitude);
  num("h0", rc.h0);
  num("L_domain", rc.L_domain);
  num("v_level", rc.v_level);
  kv("samples", std::to_string(rc.samples));

  out << "\n[numerics]\n";
  kv("n_cells", std::to_string(nc.n_cells));
  num("dt", nc.dt);
  kv("scheme", nc.scheme == Scheme::Imex ? "imex" : "explicit");
  kv("snapshot_every", std::to_string(nc.snapshot_every));
  num("t_end", nc.t_end);

  out << "\n[output]\n";
  kv("dir", config.output.dir);
  flag("fronts", config.output.fronts);
  flag("snapshots", config.output.snapshots);
  flag("reports", config.output.reports);

  out << "\n[sweep]\n";
  kv("param", config.sweep.param);
  kv("values", format_list(config.sweep.values));
  flag("simulate", config.sweep.simulate);
  return out.str();
}

}  // namespace fbm
