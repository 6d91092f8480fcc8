#include "casimir/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace casimir {

MonotoneCubic::MonotoneCubic(Eigen::ArrayXd x, Eigen::ArrayXd y)
    : x_(std::move(x)), y_(std::move(y)), slope_(x_.size()) {
  const Eigen::Index n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("MonotoneCubic: need at least two knots of equal length");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(x_(i) > x_(i - 1))) throw std::invalid_argument("MonotoneCubic: knots must increase");
  }

  Eigen::ArrayXd secant = (y_.tail(n - 1) - y_.head(n - 1)) / (x_.tail(n - 1) - x_.head(n - 1));
  if (n == 2) {
    slope_.setConstant(secant(0));
    return;
  }
  for (Eigen::Index i = 1; i < n - 1; ++i) {
    const double a = secant(i - 1);
    const double b = secant(i);
    if (a * b <= 0.0) {
      slope_(i) = 0.0;
    } else {
      // weighted harmonic mean (Fritsch-Butland)
      const double h0 = x_(i) - x_(i - 1);
      const double h1 = x_(i + 1) - x_(i);
      const double w0 = 2.0 * h1 + h0;
      const double w1 = h1 + 2.0 * h0;
      slope_(i) = (w0 + w1) / (w0 / a + w1 / b);
    }
  }
  // one-sided three-point end slopes, limited to keep monotonicity
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (s * d0 <= 0.0) return 0.0;
    if (d0 * d1 <= 0.0 && std::abs(s) > std::abs(3.0 * d0)) return 3.0 * d0;
    return s;
  };
  slope_(0) = end_slope(x_(1) - x_(0), x_(2) - x_(1), secant(0), secant(1));
  slope_(n - 1) = end_slope(x_(n - 1) - x_(n - 2), x_(n - 2) - x_(n - 3), secant(n - 2), secant(n - 3));
}

double MonotoneCubic::operator()(double x) const {
  const Eigen::Index n = x_.size();
  const double* begin = x_.data();
  Eigen::Index i = std::upper_bound(begin, begin + n, x) - begin - 1;
  i = std::clamp<Eigen::Index>(i, 0, n - 2);
  const double h = x_(i + 1) - x_(i);
  const double t = (x - x_(i)) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_(i) + (t3 - 2 * t2 + t) * h * slope_(i) +
         (-2 * t3 + 3 * t2) * y_(i + 1) + (t3 - t2) * h * slope_(i + 1);
}

} // namespace casimir
