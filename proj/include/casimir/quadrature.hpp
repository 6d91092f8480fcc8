#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "casimir/errors.hpp"

namespace casimir {

enum class QuadratureKind { DoubleExponential, GaussLaguerre };

/// Fixed-node rule for integrals over [0, inf) of integrands that decay like
/// polynomial * exp(-u). Weights already include the exp(u) factor, so a
/// rule is applied as sum_i w_i f(u_i).
template <typename Scalar>
struct QuadratureRule {
  using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

  QuadratureKind kind = QuadratureKind::DoubleExponential;
  Array nodes;
  Array weights;
  Scalar tolerance = Scalar(1e-10);

  Eigen::Index size() const { return nodes.size(); }
};

/// Golub-Welsch construction of the n-point Gauss-Laguerre rule.
template <typename Scalar = double>
QuadratureRule<Scalar> gauss_laguerre_rule(Eigen::Index n) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (n < 1 || n > 180) throw DomainError("Gauss-Laguerre node count must be in [1, 180]");
  Matrix jacobi = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    jacobi(i, i) = Scalar(2 * i + 1);
    if (i + 1 < n) jacobi(i, i + 1) = jacobi(i + 1, i) = Scalar(i + 1);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  QuadratureRule<Scalar> rule;
  rule.kind = QuadratureKind::GaussLaguerre;
  rule.nodes = solver.eigenvalues().array();
  const auto first = solver.eigenvectors().row(0).transpose().array();
  rule.weights = (first.square().log() + rule.nodes).exp();
  rule.tolerance = Scalar(1e-6);
  return rule;
}

/// Double-exponential rule u = exp(t - exp(-t)) on a uniform t grid. Robust
/// against the logarithmic endpoint behaviour of ln(1 - exp(-u)) at u -> 0,
/// which limits Gauss-Laguerre to about 1e-5.
template <typename Scalar = double>
QuadratureRule<Scalar> double_exponential_rule(Eigen::Index n) {
  if (n < 8) throw DomainError("double-exponential node count must be at least 8");
  const Scalar lo = Scalar(-4.5);
  const Scalar hi = Scalar(4.0);
  const Scalar h = (hi - lo) / Scalar(n - 1);
  QuadratureRule<Scalar> rule;
  rule.kind = QuadratureKind::DoubleExponential;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar t = lo + h * Scalar(i);
    const Scalar e = std::exp(-t);
    rule.nodes(i) = std::exp(t - e);
    rule.weights(i) = h * rule.nodes(i) * (Scalar(1) + e);
  }
  rule.tolerance = Scalar(1e-10);
  return rule;
}

template <typename Scalar = double>
QuadratureRule<Scalar> make_rule(QuadratureKind kind, Eigen::Index n) {
  return kind == QuadratureKind::GaussLaguerre ? gauss_laguerre_rule<Scalar>(n)
                                               : double_exponential_rule<Scalar>(n);
}

/// Applies a semi-infinite rule to f(u), u >= 0.
template <typename Scalar, typename F>
Scalar integrate_transverse(F&& integrand, const QuadratureRule<Scalar>& rule) {
  Scalar sum = Scalar(0);
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const Scalar value = integrand(rule.nodes(i));
    if (!std::isfinite(value)) {
      throw NumericalError("non-finite integrand at quadrature node u = " +
                           std::to_string(static_cast<double>(rule.nodes(i))));
    }
    sum += rule.weights(i) * value;
  }
  return sum;
}

template <typename Scalar>
struct IntegrationResult {
  Scalar value = Scalar(0);
  Scalar error = Scalar(0);
  std::size_t evaluations = 0;
};

namespace detail {

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
inline constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar, typename F>
IntegrationResult<Scalar> gauss_kronrod_15(F& f, Scalar a, Scalar b) {
  const Scalar center = Scalar(0.5) * (a + b);
  const Scalar half = Scalar(0.5) * (b - a);
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar sum = f(center - dx) + f(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * sum;
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * sum;
  }
  IntegrationResult<Scalar> r;
  r.value = kronrod * half;
  r.error = std::abs((kronrod - gauss) * half);
  r.evaluations = 15;
  if (!std::isfinite(r.value)) {
    throw NumericalError("non-finite integrand on [" + std::to_string(static_cast<double>(a)) +
                         ", " + std::to_string(static_cast<double>(b)) + "]");
  }
  return r;
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature on a finite interval.
/// Stops when the summed error estimate is below max(abs_tol, rel_tol |I|).
template <typename Scalar, typename F>
IntegrationResult<Scalar> integrate_adaptive(F&& f, Scalar a, Scalar b, Scalar rel_tol,
                                             Scalar abs_tol = Scalar(0),
                                             std::size_t max_intervals = 2000) {
  struct Interval {
    Scalar a, b;
    IntegrationResult<Scalar> r;
  };
  std::vector<Interval> intervals;
  intervals.push_back({a, b, detail::gauss_kronrod_15<Scalar>(f, a, b)});
  IntegrationResult<Scalar> total = intervals.front().r;
  while (total.error > std::max(abs_tol, rel_tol * std::abs(total.value))) {
    if (intervals.size() >= max_intervals) {
      throw NumericalError("adaptive quadrature did not reach tolerance within " +
                           std::to_string(max_intervals) + " intervals");
    }
    // bisect the interval with the largest error; ties resolve to the lowest index
    std::size_t worst = 0;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
      if (intervals[i].r.error > intervals[worst].r.error) worst = i;
    }
    const Interval old = intervals[worst];
    const Scalar mid = Scalar(0.5) * (old.a + old.b);
    intervals[worst] = {old.a, mid, detail::gauss_kronrod_15<Scalar>(f, old.a, mid)};
    intervals.push_back({mid, old.b, detail::gauss_kronrod_15<Scalar>(f, mid, old.b)});
    total = {};
    for (const auto& iv : intervals) {
      total.value += iv.r.value;
      total.error += iv.r.error;
    }
    total.evaluations = 15 * (2 * intervals.size() - 1);
  }
  return total;
}

/// Integral over [0, upper] on panels whose breakpoints are log-spaced from
/// `lowest` to `upper`, each panel refined adaptively. Suited to integrands
/// with structure on widely separated scales near the origin.
template <typename Scalar, typename F>
IntegrationResult<Scalar> integrate_log_panels(F&& f, Scalar lowest, Scalar upper, Scalar rel_tol,
                                               int panels_per_decade = 2) {
  std::vector<Scalar> edges{Scalar(0), lowest};
  const Scalar decades = std::log10(upper / lowest);
  const int panels = std::max(1, static_cast<int>(std::ceil(decades * panels_per_decade)));
  for (int i = 1; i <= panels; ++i) {
    edges.push_back(lowest * std::pow(Scalar(10), decades * Scalar(i) / Scalar(panels)));
  }
  edges.back() = upper;

  // coarse pass fixes the absolute tolerance shared by all panels
  Scalar coarse = Scalar(0);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    coarse += std::abs(detail::gauss_kronrod_15<Scalar>(f, edges[i], edges[i + 1]).value);
  }
  const Scalar abs_tol = rel_tol * coarse / Scalar(edges.size());

  IntegrationResult<Scalar> total;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const auto r = integrate_adaptive<Scalar>(f, edges[i], edges[i + 1], rel_tol, abs_tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

} // namespace casimir
