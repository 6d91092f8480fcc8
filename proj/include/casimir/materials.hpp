#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "casimir/interpolation.hpp"

namespace casimir {

enum class MaterialModel { Perfect, Plasma, Drude, Tabulated };

std::string to_string(MaterialModel model);

/// One sample of a tabulated dielectric function on the imaginary axis.
struct DielectricSample {
  double xi;      // rad/s
  double epsilon; // eps(i xi) >= 1
};

/// How a tabulated response is continued below its smallest sample.
enum class LowFrequencyTail { Drude, Plasma, Dielectric, Transparent };

/// Dielectric response of a mirror material evaluated at imaginary
/// frequencies. Immutable once constructed.
class OpticalResponse {
 public:
  static OpticalResponse perfect();
  static OpticalResponse plasma(double plasma_frequency);
  static OpticalResponse drude(double plasma_frequency, double damping_rate);
  /// Samples must be strictly increasing in xi with epsilon >= 1. Outside the
  /// sampled range a Drude tail (below) and an A/xi^2 tail (above) are used
  /// unless `extrapolate` is false, in which case evaluation throws.
  static OpticalResponse tabulated(std::vector<DielectricSample> samples, bool extrapolate = true);

  /// Gold with the conventional fit parameters, 9.0 eV and 35 meV.
  static OpticalResponse gold_drude();
  static OpticalResponse gold_plasma();

  MaterialModel model() const { return model_; }
  double plasma_frequency() const { return plasma_frequency_; }
  double damping_rate() const { return damping_rate_; }
  std::span<const DielectricSample> samples() const { return samples_; }
  bool extrapolates() const { return extrapolate_; }

  LowFrequencyTail low_frequency_tail() const { return low_tail_; }
  /// eps - 1 = tail_strength / (xi (xi + tail_damping)) below the table.
  double low_tail_strength() const { return low_strength_; }
  double low_tail_damping() const { return low_damping_; }
  /// Static permittivity for a Dielectric tail.
  double low_tail_static_epsilon() const { return low_static_epsilon_; }
  /// eps - 1 = A / xi^2 above the table.
  double high_tail_strength() const { return high_strength_; }

  std::string describe() const;

 private:
  OpticalResponse() = default;

  MaterialModel model_ = MaterialModel::Perfect;
  double plasma_frequency_ = 0.0;
  double damping_rate_ = 0.0;

  std::vector<DielectricSample> samples_;
  bool extrapolate_ = true;
  MonotoneCubic interpolant_; // log(eps) versus log(xi)
  LowFrequencyTail low_tail_ = LowFrequencyTail::Drude;
  double low_strength_ = 0.0;
  double low_damping_ = 0.0;
  double low_static_epsilon_ = 1.0;
  double high_strength_ = 0.0;

  friend double epsilon_at_imaginary(const OpticalResponse&, double);
};

/// eps(i xi). Returns +infinity for a perfect mirror.
double epsilon_at_imaginary(const OpticalResponse& response, double xi);

/// sigma_0 = omega_P^2 / gamma in rad/s. Only a Drude metal has a finite
/// static conductivity; the lossless plasma limit diverges and is rejected.
double static_conductivity(const OpticalResponse& response);

/// Two-column `xi_rad_per_s, epsilon` text, comma or whitespace separated,
/// `#` comment lines ignored.
OpticalResponse read_tabulated(std::istream& in, bool extrapolate = true);
OpticalResponse load_tabulated(const std::filesystem::path& path, bool extrapolate = true);

} // namespace casimir
