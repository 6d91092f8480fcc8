#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace casimir {

/// Matsubara frequencies xi_n = 2 pi n k_B T / hbar, n = 0..N, with the
/// primed-sum weights (1/2 for n = 0, 1 otherwise).
struct MatsubaraGrid {
  double temperature = 0.0;
  Eigen::ArrayXd frequencies;
  Eigen::ArrayXd weights;
  std::size_t truncation_index = 0;
  double truncation_error_estimate = 0.0;

  /// Spacing of the scaled lower limits u_n = 2 xi_n L / c.
  double scaled_spacing(double separation) const;
};

inline constexpr std::size_t kMaxMatsubaraTerms = 100000;

/// xi_1 = 2 pi k_B T / hbar.
double matsubara_frequency(double temperature, std::size_t n);

/// Chooses N so that the terms beyond xi_N contribute less than rel_tol of
/// the kept sum. The bound uses perfect-mirror terms, which dominate those of
/// any passive mirror; both the free-energy and the pressure tails are
/// checked. T <= 0 must use the zero-temperature integral instead.
MatsubaraGrid build_grid(double temperature, double separation, double rel_tol,
                         std::size_t max_terms = kMaxMatsubaraTerms);

/// Same grid with an explicit truncation index, for convergence checks.
MatsubaraGrid build_grid_with_terms(double temperature, std::size_t truncation_index);

} // namespace casimir
