#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fbm/report.hpp"

namespace fbm {

enum class VerifyLevel { Fast, Full };

struct VerifyOptions {
  VerifyLevel level = VerifyLevel::Fast;
  int jobs = 1;
  /// Replaces every computed R* in criterion 1; used to check that a bad value is caught.
  std::optional<double> r_star_override;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  Json metrics = Json::object();
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CriterionResult> rows;

  bool all_passed() const;
  Json to_json() const;
  /// One line per criterion: "PASS  1  r_star_exactness  <detail>".
  std::string table() const;
};

/// Fast runs criteria 1 to 5, full adds the PDE criteria 6 to 10.  Failures are rows, not
/// exceptions.
VerifyReport run_verify(const VerifyOptions& options);

/// Observed order log2(|a1 - a2| / |a2 - a3|) from three successive refinements.
double richardson_order(double coarse, double mid, double fine);

}  // namespace fbm
