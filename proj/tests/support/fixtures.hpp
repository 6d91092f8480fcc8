#pragma once

#include <cstdint>

#include "casimir/fit.hpp"

namespace fixture {

// Reduced fit setup: 6.4 um window at 25 nm cells, l_max in [150 nm, 1.5 um].
inline casimir::TessellationModel fit_model() {
  casimir::TessellationModel m;
  m.l_min = 100e-9;
  m.window = 6.4e-6;
  m.resolution = 256;
  m.realizations = 200;
  return m;
}

inline casimir::FitBounds fit_bounds() { return {150e-9, 1.5e-6, 1e-3, 0.2}; }

inline constexpr double kTrueLmax = 600e-9;
inline constexpr double kTrueVrms = 0.015;

/// 12 log-spaced separations over 0.16 - 0.75 um.
Eigen::ArrayXd residual_separations();

/// Quasi-local patch pressure for (l_max, v_rms) on `separations`, drawn with
/// `spectrum_seed`, plus Gaussian noise of relative size `noise` from
/// `noise_seed`. sigma = noise |P|.
casimir::MeasurementSeries synthetic_residuals(const casimir::TessellationModel& model, double l_max,
                                               double v_rms, const Eigen::ArrayXd& separations,
                                               std::uint64_t spectrum_seed, std::uint64_t noise_seed,
                                               double noise = 0.01);

} // namespace fixture
