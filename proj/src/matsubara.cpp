#include "casimir/matsubara.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

// Perfect-mirror bounds on one term, as functions of a = u_n:
//   energy:   int_a^inf u |ln(1 - e^-u)| du  = sum_m e^{-m a} (a/m^2 + 1/m^3)
//   pressure: int_a^inf u^2 e^-u/(1-e^-u) du = sum_m e^{-m a} (a^2/m + 2a/m^2 + 2/m^3)
// Integrals of the same bounds over a in [a, inf) give the tail estimate.
struct TermBound {
  double energy;
  double pressure;
};

template <typename Summand>
TermBound sum_images(Summand&& summand) {
  TermBound b{0.0, 0.0};
  for (int m = 1; m <= 400; ++m) {
    const TermBound d = summand(double(m));
    b.energy += d.energy;
    b.pressure += d.pressure;
    if (d.pressure <= 1e-17 * b.pressure && d.energy <= 1e-17 * b.energy) break;
  }
  return b;
}

TermBound perfect_term(double a) {
  return sum_images([a](double m) {
    const double e = std::exp(-m * a);
    return TermBound{e * (a / (m * m) + 1.0 / (m * m * m)),
                     e * (a * a / m + 2.0 * a / (m * m) + 2.0 / (m * m * m))};
  });
}

TermBound perfect_term_integral(double a) {
  return sum_images([a](double m) {
    const double e = std::exp(-m * a);
    const double m2 = m * m;
    return TermBound{e * (a / (m2 * m) + 2.0 / (m2 * m2)),
                     e * (a * a / m2 + 4.0 * a / (m2 * m) + 6.0 / (m2 * m2))};
  });
}

} // namespace

double MatsubaraGrid::scaled_spacing(double separation) const {
  return 2.0 * matsubara_frequency(temperature, 1) * separation / PhysicalConstants::c;
}

double matsubara_frequency(double temperature, std::size_t n) {
  return 2.0 * pi * double(n) * PhysicalConstants::k_B * temperature / PhysicalConstants::hbar;
}

MatsubaraGrid build_grid_with_terms(double temperature, std::size_t truncation_index) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("Matsubara grid needs T > 0; use the zero-temperature path for T = 0");
  }
  if (truncation_index < 1) throw DomainError("Matsubara truncation index must be >= 1");
  MatsubaraGrid grid;
  grid.temperature = temperature;
  grid.truncation_index = truncation_index;
  const auto count = static_cast<Eigen::Index>(truncation_index + 1);
  grid.frequencies = Eigen::ArrayXd::LinSpaced(count, 0.0, double(truncation_index)) *
                     matsubara_frequency(temperature, 1);
  grid.weights = Eigen::ArrayXd::Ones(count);
  grid.weights(0) = 0.5;
  return grid;
}

MatsubaraGrid build_grid(double temperature, double separation, double rel_tol,
                         std::size_t max_terms) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("Matsubara grid needs T > 0; use the zero-temperature path for T = 0");
  }
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("separation must be positive");
  }
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw DomainError("rel_tol must lie in (0, 1)");

  const double du = 2.0 * matsubara_frequency(temperature, 1) * separation / PhysicalConstants::c;
  TermBound head = perfect_term(0.0);
  head.energy *= 0.5;
  head.pressure *= 0.5;

  // terms decrease with n, so sum_{m>n} f(u_m) <= f(u_{n+1}) + int_{u_{n+1}}^inf f / du
  auto tail_after = [&](std::size_t n) {
    const double a = du * double(n + 1);
    const TermBound first = perfect_term(a);
    const TermBound rest = perfect_term_integral(a);
    return TermBound{first.energy + rest.energy / du, first.pressure + rest.pressure / du};
  };

  for (std::size_t n = 1; n <= max_terms; ++n) {
    const TermBound t = perfect_term(du * double(n));
    head.energy += t.energy;
    head.pressure += t.pressure;
    // cheap pre-check: the next term alone already exceeds the budget
    if (t.pressure > rel_tol * head.pressure) continue;
    const TermBound tail = tail_after(n);
    const double estimate = std::max(tail.energy / head.energy, tail.pressure / head.pressure);
    if (estimate < rel_tol) {
      MatsubaraGrid grid = build_grid_with_terms(temperature, n);
      grid.truncation_error_estimate = estimate;
      return grid;
    }
  }
  throw NumericalError("Matsubara sum needs more than " + std::to_string(max_terms) +
                       " terms at T = " + std::to_string(temperature) +
                       " K, L = " + std::to_string(separation) + " m");
}

} // namespace casimir
