#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "casimir/series.hpp"

namespace casimir {

enum class SpectrumKind { SharpCutoff, Sampled };

/// Radially symmetric spectral density S(k) of surface-voltage fluctuations,
/// normalized so that <V^2> = int d^2k/(2pi)^2 S(k) = int_0^inf k dk/(2pi) S(k).
/// Units: k in rad/m, S in V^2 m^2.
class PatchSpectrum {
 public:
  /// Flat S = 4 pi V_rms^2 / (k_max^2 - k_min^2) on [k_min, k_max], zero elsewhere.
  static PatchSpectrum sharp_cutoff(double k_min, double k_max, double v_rms);

  /// Piecewise-linear S through (k_j, S_j), k strictly increasing from k_0 >= 0.
  /// Held at S_0 below k_0 and zero above the last knot.
  static PatchSpectrum sampled(Eigen::ArrayXd k, Eigen::ArrayXd density,
                               std::vector<std::string> provenance = {});

  static PatchSpectrum zero() { return sharp_cutoff(1.0, 2.0, 0.0); }

  SpectrumKind kind() const { return kind_; }

  double operator()(double k) const;

  /// int_0^inf k dk/(2pi) S(k), exact for both representations.
  double variance() const;
  double rms_voltage() const;

  /// Copy with S multiplied by `factor` (a voltage scale c gives factor c^2).
  PatchSpectrum scaled(double factor) const;

  bool is_zero() const;

  double k_min() const { return k_min_; }
  double k_max() const { return k_max_; }
  double level() const { return level_; }

  const Eigen::ArrayXd& wavevectors() const { return k_; }
  const Eigen::ArrayXd& density() const { return s_; }
  const std::vector<std::string>& provenance() const { return provenance_; }

  /// Intervals on which S is smooth, clipped to [0, k_cut].
  std::vector<std::pair<double, double>> smooth_pieces(double k_cut) const;

 private:
  PatchSpectrum() = default;

  SpectrumKind kind_ = SpectrumKind::SharpCutoff;
  double k_min_ = 0.0;
  double k_max_ = 0.0;
  double level_ = 0.0;
  Eigen::ArrayXd k_;
  Eigen::ArrayXd s_;
  std::vector<std::string> provenance_;
};

/// Sharp-cutoff spectrum with cutoffs set by the smallest and largest patch
/// (grain) sizes: k_min = 2 pi / l_max, k_max = 2 pi / l_min.
PatchSpectrum grain_cutoff_spectrum(double l_min, double l_max, double v_rms);

/// Quasi-local patch model: Voronoi tessellation of a periodic square window
/// seeded with ceil((W / l_mean)^2) uniform points, l_mean = (l_min + l_max)/2,
/// each cell carrying an independent Gaussian voltage of variance V_rms^2.
struct TessellationModel {
  double l_min = 50e-9;           // m
  double l_max = 300e-9;          // m
  double v_rms = 0.081;           // V
  double window = 2.4e-6;         // W, m
  std::size_t resolution = 192;   // cells per side
  std::size_t realizations = 200; // M
  std::uint64_t seed = 1;

  double cell_size() const { return window / double(resolution); }
  double mean_patch_size() const { return 0.5 * (l_min + l_max); }
  std::size_t seed_count() const;

  /// Throws ConfigError when 0 < l_min <= l_max < W/4, M >= 1 and
  /// cell <= l_min/4 do not all hold.
  void validate() const;
};

struct Tessellation {
  Eigen::Matrix<double, Eigen::Dynamic, 2> sites; // m
  Eigen::ArrayXd voltages;                        // unit variance
};

/// Sites and voltages of one realization; realization r uses a sub-seed
/// derived from (model.seed, r).
Tessellation draw_tessellation(const TessellationModel& model, std::uint64_t realization);

/// Pixel map of the periodic Voronoi field: entry (i, j) holds the voltage
/// of the site nearest to the centre of cell (i, j).
Eigen::MatrixXd rasterize(const Tessellation& tessellation, const TessellationModel& model);

struct QuasiLocalEstimate {
  PatchSpectrum spectrum;
  double pixel_variance = 0.0; // realization-averaged <V^2> of the pixel field
  std::size_t sites_per_realization = 0;
};

/// Ensemble-averaged radial periodogram, bins of width 2 pi / W centred on
/// multiples of 2 pi / W up to the Nyquist radius.
QuasiLocalEstimate estimate_quasilocal(const TessellationModel& model);
PatchSpectrum quasilocal_spectrum(const TessellationModel& model);

struct PatchPressureResult {
  double pressure = 0.0; // Pa, negative = attractive
  Eigen::ArrayXd k_samples;
  Eigen::ArrayXd integrand_samples; // pressure integrand per unit k, Pa m
};

/// Electrostatic pressure between two planes with fluctuating surface
/// potentials,
///   P(L) = -(eps0 / 4 pi) int_0^inf dk k^3 [S_a + S_b - 2 S_ab cosh kL] / sinh^2 kL.
/// The cross spectrum defaults to zero (uncorrelated plates).
PatchPressureResult patch_pressure(double separation, const PatchSpectrum& spectrum_a,
                                   const PatchSpectrum& spectrum_b,
                                   const std::optional<PatchSpectrum>& cross = std::nullopt);

MeasurementSeries patch_pressure_curve(const Eigen::ArrayXd& separations,
                                       const PatchSpectrum& spectrum_a,
                                       const PatchSpectrum& spectrum_b,
                                       const std::optional<PatchSpectrum>& cross = std::nullopt);

/// Two-column `k_rad_per_m, S_V2_m2` text with `#` comments carrying the
/// normalization convention and provenance lines.
void write_spectrum(std::ostream& out, const PatchSpectrum& spectrum);
PatchSpectrum read_spectrum(std::istream& in);

} // namespace casimir
