#include "casimir/lifshitz.hpp"

#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/matsubara.hpp"
#include "casimir/reflection.hpp"

namespace casimir {

namespace {

struct TermSums {
  double energy = 0.0;   // int u sum_p ln(1 - R_p e^-u) du
  double pressure = 0.0; // int u^2 sum_p R_p e^-u / (1 - R_p e^-u) du
};

// Round-trip factor R = r_a r_b enters as 1 - R e^-u = (1 - R) - R expm1(-u).
inline void accumulate_mode(double round_trip, double u, double weight, TermSums& sums) {
  const double denom = (1.0 - round_trip) - round_trip * std::expm1(-u);
  sums.energy += weight * u * std::log(denom);
  sums.pressure += weight * u * u * round_trip * std::exp(-u) / denom;
}

void require_finite(const TermSums& sums, double xi) {
  if (!std::isfinite(sums.energy) || !std::isfinite(sums.pressure)) {
    throw NumericalError("non-finite Lifshitz integrand at xi = " + std::to_string(xi) + " rad/s");
  }
}

// xi > 0: the transverse integral runs over u = u0 + t, t >= 0.
TermSums finite_frequency_term(const CavityConfig& config, const QuadratureRule<double>& rule,
                               double xi) {
  const double L = config.separation;
  const double eps_a = epsilon_at_imaginary(config.mirror_a, xi);
  const double eps_b = epsilon_at_imaginary(config.mirror_b, xi);
  const double q = xi / PhysicalConstants::c;
  const double u0 = 2.0 * q * L;
  TermSums sums;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double u = u0 + rule.nodes(i);
    const double kappa = u / (2.0 * L);
    for (const Polarization p : kPolarizations) {
      const double r = fresnel_from_epsilon(eps_a, p, kappa, q) * fresnel_from_epsilon(eps_b, p, kappa, q);
      accumulate_mode(r, u, rule.weights(i), sums);
    }
  }
  require_finite(sums, xi);
  return sums;
}

TermSums static_term(const CavityConfig& config, const QuadratureRule<double>& rule) {
  const double L = config.separation;
  TermSums sums;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes(i);
    const double k = u / (2.0 * L);
    for (const Polarization p : kPolarizations) {
      const double r = zero_frequency_reflection(config.mirror_a, p, k) *
                       zero_frequency_reflection(config.mirror_b, p, k);
      if (r != 0.0) accumulate_mode(r, u, rule.weights(i), sums);
    }
  }
  require_finite(sums, 0.0);
  return sums;
}

void validate(const CavityConfig& config) {
  if (!(config.separation > 0.0) || !std::isfinite(config.separation)) {
    throw DomainError("separation must be positive and finite");
  }
  if (!(config.temperature >= 0.0) || !std::isfinite(config.temperature)) {
    throw DomainError("temperature must be non-negative and finite");
  }
}

PlaneResult evaluate_finite_temperature(const CavityConfig& config, const NumericsOptions& numerics) {
  const auto rule = make_rule<double>(numerics.quadrature, numerics.quadrature_nodes);
  const MatsubaraGrid grid = build_grid(config.temperature, config.separation,
                                        numerics.matsubara_rel_tol, numerics.max_matsubara_terms);
  TermSums total;
  for (Eigen::Index n = 0; n < grid.frequencies.size(); ++n) {
    const TermSums term = n == 0 ? static_term(config, rule)
                                 : finite_frequency_term(config, rule, grid.frequencies(n));
    total.energy += grid.weights(n) * term.energy;
    total.pressure += grid.weights(n) * term.pressure;
  }
  const double L = config.separation;
  const double prefactor = PhysicalConstants::k_B * config.temperature / (8.0 * pi * L * L);
  PlaneResult result;
  result.free_energy_per_area = prefactor * total.energy;
  result.pressure = -prefactor * total.pressure / L;
  result.truncation_index = grid.truncation_index;
  result.truncation_error_estimate = grid.truncation_error_estimate;
  result.quadrature_tolerance = rule.tolerance;
  return result;
}

// T = 0: with x = 2 xi L / c the frequency integral becomes
//   F/A = hbar c / (32 pi^2 L^3) int_0^inf dx int_x^inf u du sum_p ln(...)
PlaneResult evaluate_zero_temperature(const CavityConfig& config, const NumericsOptions& numerics) {
  const auto rule = make_rule<double>(numerics.quadrature, numerics.quadrature_nodes);
  const double L = config.separation;
  auto inner = [&](double x) {
    const double xi = x * PhysicalConstants::c / (2.0 * L);
    return x > 0.0 ? finite_frequency_term(config, rule, xi) : static_term(config, rule);
  };
  constexpr double lowest = 1e-12;
  constexpr double upper = 90.0;
  const double tol = numerics.zero_temperature_rel_tol;
  const auto energy = integrate_log_panels<double>([&](double x) { return inner(x).energy; },
                                                   lowest, upper, tol);
  const auto force = integrate_log_panels<double>([&](double x) { return inner(x).pressure; },
                                                  lowest, upper, tol);
  const double prefactor = PhysicalConstants::hbar * PhysicalConstants::c / (32.0 * pi * pi * L * L * L);
  PlaneResult result;
  result.free_energy_per_area = prefactor * energy.value;
  result.pressure = -prefactor * force.value / L;
  result.truncation_index = 0;
  result.truncation_error_estimate = 0.0;
  result.quadrature_tolerance = tol;
  return result;
}

} // namespace

PlaneResult evaluate_plane(const CavityConfig& config, const NumericsOptions& numerics) {
  validate(config);
  return config.temperature > 0.0 ? evaluate_finite_temperature(config, numerics)
                                  : evaluate_zero_temperature(config, numerics);
}

double free_energy_per_area(const CavityConfig& config, const NumericsOptions& numerics) {
  return evaluate_plane(config, numerics).free_energy_per_area;
}

double pressure(const CavityConfig& config, const NumericsOptions& numerics) {
  return evaluate_plane(config, numerics).pressure;
}

double pressure_difference(const CavityConfig& base, const OpticalResponse& alternative,
                           const NumericsOptions& numerics) {
  CavityConfig alt = base;
  alt.mirror_a = alternative;
  alt.mirror_b = alternative;
  return pressure(alt, numerics) - pressure(base, numerics);
}

Eigen::ArrayXd pressure_difference(const CavityConfig& base, const OpticalResponse& alternative,
                                   const Eigen::ArrayXd& separations,
                                   const NumericsOptions& numerics) {
  Eigen::ArrayXd out(separations.size());
  CavityConfig at = base;
  for (Eigen::Index i = 0; i < separations.size(); ++i) {
    at.separation = separations(i);
    out(i) = pressure_difference(at, alternative, numerics);
  }
  return out;
}

double ideal_energy(double separation, double area) {
  if (!(area > 0.0)) throw DomainError("area must be positive");
  return ideal_free_energy_per_area(separation) * area;
}

double ideal_free_energy_per_area(double separation) {
  if (!(separation > 0.0)) throw DomainError("separation must be positive");
  return -PhysicalConstants::hbar * PhysicalConstants::c * pi * pi /
         (720.0 * std::pow(separation, 3));
}

double ideal_pressure(double separation) {
  if (!(separation > 0.0)) throw DomainError("separation must be positive");
  return -pi * pi * PhysicalConstants::hbar * PhysicalConstants::c / (240.0 * std::pow(separation, 4));
}

double casimir_1d_energy(double separation, double r1, double r2) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("separation must be positive and finite");
  }
  if (!(std::abs(r1) <= 1.0) || !(std::abs(r2) <= 1.0)) {
    throw DomainError("1-D reflection amplitudes must lie in [-1, 1]");
  }
  const double rho = r1 * r2;
  if (rho == 0.0) return 0.0;
  // x = 2 xi L / c
  static const auto rule = double_exponential_rule<double>(120);
  const double integral = integrate_transverse(
      [rho](double x) { return std::log((1.0 - rho) - rho * std::expm1(-x)); }, rule);
  return PhysicalConstants::hbar * PhysicalConstants::c / (4.0 * pi * separation) * integral;
}

} // namespace casimir
