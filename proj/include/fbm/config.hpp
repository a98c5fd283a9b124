#pragma once

#include <string>
#include <vector>

#include "fbm/scenarios.hpp"

namespace fbm {

struct OutputConfig {
  std::string dir = "out";
  bool fronts = true;
  bool snapshots = true;
  bool reports = true;
};

struct SweepConfig {
  std::string param = "mu1";  ///< one of d, r, h, k, mu1, mu2
  std::vector<double> values;
  bool simulate = false;
};

/// Everything a run needs, fully resolved.  The text form is an INI file with sections
/// [model], [scenario], [numerics], [output] and an optional [sweep].
struct RunConfig {
  ScenarioSpec scenario;
  OutputConfig output;
  SweepConfig sweep;

  bool operator==(const RunConfig&) const;
};

/// Preset defaults, then every key present in `text` overrides.  Unknown sections or keys
/// are rejected with InvalidConfig.  An absent [scenario] preset means weak_strong_A2.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
/// Writes every field at round-trip precision.
std::string to_text(const RunConfig& config);

RunConfig config_for_preset(Regime regime);

/// Reads or writes one ModelParams field by its name in the text form.
double& param_by_name(ModelParams& params, const std::string& name);

}  // namespace fbm
