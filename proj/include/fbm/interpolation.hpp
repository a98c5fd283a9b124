#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

namespace fbm {

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).  Every cubic piece
/// is monotone between its two nodes, so the interpolant never leaves the range of the data
/// on any cell.
template <typename Scalar>
class MonotoneCubic {
 public:
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  MonotoneCubic(Vec x, Vec y) : x_(std::move(x)), y_(std::move(y)), m_(x_.size()) {
    const Eigen::Index n = x_.size();
    if (n < 2) {
      m_.setZero();
      return;
    }
    Vec delta(n - 1);
    for (Eigen::Index i = 0; i + 1 < n; ++i) delta(i) = (y_(i + 1) - y_(i)) / (x_(i + 1) - x_(i));
    m_(0) = delta(0);
    m_(n - 1) = delta(n - 2);
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
      m_(i) = delta(i - 1) * delta(i) <= Scalar(0) ? Scalar(0) : Scalar(0.5) * (delta(i - 1) + delta(i));
    }
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (delta(i) == Scalar(0)) {
        m_(i) = Scalar(0);
        m_(i + 1) = Scalar(0);
        continue;
      }
      const Scalar alpha = m_(i) / delta(i);
      const Scalar beta = m_(i + 1) / delta(i);
      // Endpoint slopes of the wrong sign would break monotonicity on the cell.
      if (alpha < Scalar(0)) m_(i) = Scalar(0);
      if (beta < Scalar(0)) m_(i + 1) = Scalar(0);
      const Scalar a = std::max(alpha, Scalar(0));
      const Scalar b = std::max(beta, Scalar(0));
      const Scalar norm2 = a * a + b * b;
      if (norm2 > Scalar(9)) {
        const Scalar tau = Scalar(3) / std::sqrt(norm2);
        m_(i) = tau * a * delta(i);
        m_(i + 1) = tau * b * delta(i);
      }
    }
  }

  /// Values outside [x.front(), x.back()] are clamped to the end values.
  Scalar operator()(Scalar t) const {
    const Eigen::Index n = x_.size();
    if (t <= x_(0)) return y_(0);
    if (t >= x_(n - 1)) return y_(n - 1);
    const Scalar* begin = x_.data();
    const Eigen::Index i = std::upper_bound(begin, begin + n, t) - begin - 1;
    const Scalar h = x_(i + 1) - x_(i);
    const Scalar s = (t - x_(i)) / h;
    const Scalar s2 = s * s;
    const Scalar s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_(i) + (s3 - 2 * s2 + s) * h * m_(i) +
           (-2 * s3 + 3 * s2) * y_(i + 1) + (s3 - s2) * h * m_(i + 1);
  }

  const Vec& nodes() const { return x_; }
  const Vec& values() const { return y_; }

 private:
  Vec x_, y_, m_;
};

}  // namespace fbm
