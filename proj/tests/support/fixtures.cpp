#include "fixtures.hpp"

#include <cmath>
#include <random>

namespace fixture {

Eigen::ArrayXd residual_separations() {
  return Eigen::ArrayXd::LinSpaced(12, std::log(160e-9), std::log(750e-9)).exp();
}

casimir::MeasurementSeries synthetic_residuals(const casimir::TessellationModel& model, double l_max,
                                               double v_rms, const Eigen::ArrayXd& separations,
                                               std::uint64_t spectrum_seed, std::uint64_t noise_seed,
                                               double noise) {
  casimir::TessellationModel truth = model;
  truth.l_max = l_max;
  truth.v_rms = v_rms;
  truth.seed = spectrum_seed;
  const casimir::PatchSpectrum s = casimir::quasilocal_spectrum(truth);
  casimir::MeasurementSeries series = casimir::patch_pressure_curve(separations, s, s);
  series.sigma = noise * series.value.abs();
  std::mt19937_64 rng(noise_seed);
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < series.size(); ++i) series.value(i) += series.sigma(i) * normal(rng);
  series.label = "synthetic quasi-local residuals";
  return series;
}

} // namespace fixture
