#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "casimir/interpolation.hpp"
#include "casimir/patch.hpp"
#include "casimir/series.hpp"

namespace casimir {

struct FitBounds {
  double l_max_lower = 100e-9; // m
  double l_max_upper = 5e-6;   // m
  double v_rms_lower = 1e-3;   // V
  double v_rms_upper = 0.2;    // V

  /// Throws ConfigError unless 0 < lower < upper for both parameters.
  void validate() const;
};

/// Which sign the residual column carries relative to the (attractive,
/// negative) patch pressure.
enum class ResidualSign { Auto, Signed, Magnitude };

struct FitOptions {
  std::size_t grid_points = 16;      // per axis, also the number of cached l_max nodes
  std::size_t max_iterations = 200;  // simplex
  double rel_tol = 1e-6;             // relative chi^2 spread over the simplex
  ResidualSign sign = ResidualSign::Auto;
};

struct FitResult {
  double l_max = 0.0;          // m
  double v_rms = 0.0;          // V
  double chi_squared = 0.0;
  double l_max_half_width = 0.0; // m, from cov = 2 H^-1 of chi^2
  double v_rms_half_width = 0.0; // V
  std::size_t points = 0;
  std::size_t iterations = 0;
  bool converged = false;
  bool flat_chi_squared = false; // residuals carry no signal
  bool at_bound = false;         // minimizer touches a search bound
  bool magnitude_residuals = false;
  double grid_best_l_max = 0.0;
  double grid_best_v_rms = 0.0;
  double grid_best_chi_squared = 0.0;
  Eigen::ArrayXd fitted; // model pressure at the residual separations, Pa
  std::vector<std::string> diagnostics;
};

/// Unit-voltage patch pressures at the residual separations for the cached
/// l_max nodes; the quasi-local spectrum for each node is drawn once.
class PatchCurveCache {
 public:
  PatchCurveCache(const Eigen::ArrayXd& separations, const TessellationModel& fixed,
                  const FitBounds& bounds, std::size_t nodes);

  const Eigen::ArrayXd& nodes() const { return nodes_; }
  /// Column j holds P(L_i) for l_max = nodes()[j] and V_rms = 1 V.
  const Eigen::MatrixXd& unit_pressure() const { return unit_; }
  /// Unit curve at any l_max inside the bounds; log |P| interpolated in log
  /// l_max between nodes.
  Eigen::ArrayXd curve(double l_max) const;

 private:
  Eigen::ArrayXd nodes_;
  Eigen::MatrixXd unit_;
  std::vector<MonotoneCubic> log_curves_;
};

/// Weighted least-squares fit of the quasi-local model (l_max, V_rms) to a
/// residual pressure curve. `fixed` supplies l_min, window, resolution and
/// realization count; `seed` replaces its seed.
FitResult fit_patch_parameters(const MeasurementSeries& residual, const TessellationModel& fixed,
                               const FitBounds& bounds, std::uint64_t seed,
                               const FitOptions& options = {});

/// Flat `key = value` report.
std::string format_fit_report(const FitResult& result);

} // namespace casimir
