#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace fbm {

/// Tridiagonal system stored by diagonals: lower(i) multiplies x(i-1), upper(i) multiplies
/// x(i+1).  lower(0) and upper(n-1) are ignored.
template <typename Scalar>
struct Tridiagonal {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Vec lower, diag, upper;

  Tridiagonal() = default;
  explicit Tridiagonal(Eigen::Index n)
      : lower(Vec::Zero(n)), diag(Vec::Zero(n)), upper(Vec::Zero(n)) {}

  Eigen::Index size() const { return diag.size(); }

  template <typename Derived>
  Vec apply(const Eigen::MatrixBase<Derived>& x) const {
    const Eigen::Index n = size();
    Vec y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Scalar acc = diag(i) * x(i);
      if (i > 0) acc += lower(i) * x(i - 1);
      if (i + 1 < n) acc += upper(i) * x(i + 1);
      y(i) = acc;
    }
    return y;
  }
};

/// Thomas algorithm.  No pivoting; callers assemble diagonally dominant systems.
template <typename Scalar, typename Derived>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solve(const Tridiagonal<Scalar>& a,
                                               const Eigen::MatrixBase<Derived>& rhs) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.size();
  Vec c(n), x(n);
  Scalar denom = a.diag(0);
  c(0) = n > 1 ? a.upper(0) / denom : Scalar(0);
  x(0) = rhs(0) / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = a.diag(i) - a.lower(i) * c(i - 1);
    c(i) = i + 1 < n ? a.upper(i) / denom : Scalar(0);
    x(i) = (rhs(i) - a.lower(i) * x(i - 1)) / denom;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) x(i) -= c(i) * x(i + 1);
  return x;
}

}  // namespace fbm
