#include "fbm/types.hpp"

#include <cmath>

namespace fbm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::StabilityFailure: return "StabilityFailure";
    case ErrorKind::DomainTooSmall: return "DomainTooSmall";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::EmptyBand: return "EmptyBand";
    case ErrorKind::ConditionViolated: return "ConditionViolated";
    case ErrorKind::PresetUnreachable: return "PresetUnreachable";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void ModelParams::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(d) || !positive(r) || !positive(h) || !positive(mu1) || !positive(mu2)) {
    throw Error(ErrorKind::InvalidSpec, "model parameters d, r, h, mu1, mu2 must be positive");
  }
  // k = 0 is admitted as the decoupled limit.
  if (!std::isfinite(k) || k < 0.0) throw Error(ErrorKind::InvalidSpec, "k must be >= 0");
  if (N < 1) throw Error(ErrorKind::InvalidSpec, "space dimension N must be >= 1");
}

}  // namespace fbm
