#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

/// Two parallel plane mirrors at separation L and common temperature T.
struct CavityConfig {
  double separation = 1e-6;  // m
  double temperature = 0.0;  // K, 0 selects the zero-temperature integral
  OpticalResponse mirror_a = OpticalResponse::perfect();
  OpticalResponse mirror_b = OpticalResponse::perfect();
};

struct NumericsOptions {
  QuadratureKind quadrature = QuadratureKind::DoubleExponential;
  Eigen::Index quadrature_nodes = 80;
  double matsubara_rel_tol = 1e-8;
  double zero_temperature_rel_tol = 1e-8;
  std::size_t max_matsubara_terms = 100000;
};

/// Free energy per area and pressure of the plane-plane cavity. Attractive
/// pressures are negative.
struct PlaneResult {
  double free_energy_per_area = 0.0; // J/m^2
  double pressure = 0.0;             // Pa
  std::size_t truncation_index = 0;  // Matsubara N, 0 on the T = 0 path
  double truncation_error_estimate = 0.0;
  double quadrature_tolerance = 0.0;
};

/// Lifshitz free energy per area
///   F/A = k_B T sum'_n sum_p int d^2k/(2pi)^2 ln(1 - r_p^a r_p^b e^{-2 kappa_n L})
/// and pressure P = -d(F/A)/dL, differentiated under the integral. At T = 0
/// the primed sum becomes (hbar / 2pi) int_0^inf d xi.
PlaneResult evaluate_plane(const CavityConfig& config, const NumericsOptions& numerics = {});

double free_energy_per_area(const CavityConfig& config, const NumericsOptions& numerics = {});
double pressure(const CavityConfig& config, const NumericsOptions& numerics = {});

/// P_alt - P_base, with `alternative` replacing both mirrors of `base`.
double pressure_difference(const CavityConfig& base, const OpticalResponse& alternative,
                           const NumericsOptions& numerics = {});

/// Same, evaluated on a grid of separations.
Eigen::ArrayXd pressure_difference(const CavityConfig& base, const OpticalResponse& alternative,
                                   const Eigen::ArrayXd& separations,
                                   const NumericsOptions& numerics = {});

/// Perfect mirrors at zero temperature: E = -hbar c pi^2 A / (720 L^3).
double ideal_energy(double separation, double area);
double ideal_free_energy_per_area(double separation);
/// P = -dE/dL / A = -pi^2 hbar c / (240 L^4).
double ideal_pressure(double separation);

/// One-dimensional scalar cavity with frequency-independent amplitudes,
///   E = (hbar / 2pi) int_0^inf d xi ln(1 - r1 r2 e^{-2 xi L / c}).
double casimir_1d_energy(double separation, double r1, double r2);

} // namespace casimir
