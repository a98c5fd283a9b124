#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace fbm {

using Vector = Eigen::VectorXd;

/// Failure categories surfaced by the solvers and builders.
enum class ErrorKind {
  InvalidSpec,
  InvalidState,
  NonConvergence,
  BracketFailure,
  StabilityFailure,
  DomainTooSmall,
  WindowTooShort,
  EmptyBand,
  ConditionViolated,
  PresetUnreachable,
  InvalidConfig,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  Error(ErrorKind kind, const std::string& what, double time)
      : Error(kind, what + " (t = " + std::to_string(time) + ")") {
    time_ = time;
  }

  ErrorKind kind() const { return kind_; }
  /// Simulation time of the failure, when it happened inside a time integration.
  std::optional<double> time() const { return time_; }

 private:
  ErrorKind kind_;
  std::optional<double> time_;
};

/// Parameters of the two-species competition system with free boundaries.
/// u: d, r, k, mu1.  v: unit diffusion and growth, h, mu2.
struct ModelParams {
  double d = 1.0;
  double r = 1.0;
  double h = 2.0;
  double k = 0.5;
  double mu1 = 1.0;
  double mu2 = 1.0;
  int N = 1;

  /// Throws InvalidSpec unless every scalar is positive and N >= 1.
  void validate() const;
  /// 0 < k < 1 < h.
  bool weak_strong() const { return k > 0.0 && k < 1.0 && h > 1.0; }
};

}  // namespace fbm
