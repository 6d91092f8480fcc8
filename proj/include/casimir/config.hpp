#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/fit.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/patch.hpp"
#include "casimir/pfa.hpp"

namespace casimir {

/// [material], [material_b], [alt_material]
struct MaterialSection {
  std::string model = "drude";       // perfect | plasma | drude | tabulated
  double plasma_frequency_ev = 9.0;  // hbar omega_P
  double damping_ev = 0.035;         // hbar gamma
  std::string table_path;            // tabulated: columns xi_rad_s, epsilon
  bool extrapolate = true;

  OpticalResponse build() const;
};

/// [geometry]
struct GeometrySection {
  std::string type = "plane";        // plane | sphere
  double sphere_radius_m = 150e-6;
  double min_aspect_ratio = 100.0;
  bool allow_outside_validity = false;
};

/// [grid]
struct GridSection {
  double min_m = 160e-9;
  double max_m = 750e-9;
  std::size_t count = 12;
  std::string spacing = "log";       // log | linear

  Eigen::ArrayXd separations() const;
};

/// [patch]
struct PatchSection {
  std::string model = "quasilocal";  // quasilocal | sharp
  double v_rms_v = 0.081;
  double l_min_m = 50e-9;
  double l_max_m = 300e-9;
  double window_m = 2.4e-6;
  std::size_t resolution = 192;
  std::size_t realizations = 200;
  std::uint64_t seed = 1;

  TessellationModel tessellation() const;
  PatchSpectrum spectrum() const;
};

/// [fit]
struct FitSection {
  std::string input_path;
  double l_max_lower_m = 100e-9;
  double l_max_upper_m = 5e-6;
  double v_rms_lower_v = 1e-3;
  double v_rms_upper_v = 0.2;
  std::size_t grid_points = 16;
  std::size_t max_iterations = 200;
  double rel_tol = 1e-6;
  std::string residual_sign = "auto"; // auto | signed | magnitude

  FitBounds bounds() const;
  FitOptions options() const;
};

/// [numerics]
struct NumericsSection {
  std::string quadrature = "double_exponential"; // double_exponential | gauss_laguerre
  std::size_t quadrature_nodes = 80;
  double matsubara_rel_tol = 1e-8;
  double zero_temperature_rel_tol = 1e-8;
  std::size_t max_matsubara_terms = 100000;

  NumericsOptions options() const;
};

/// [output]
struct OutputSection {
  std::string format = "csv"; // csv | structured
  std::string path;           // empty: standard output
};

struct RunConfig {
  MaterialSection material;
  MaterialSection material_b;
  MaterialSection alt_material = [] {
    MaterialSection m;
    m.model = "plasma";
    return m;
  }();
  double temperature_k = 300.0; // [thermal]
  GeometrySection geometry;
  GridSection grid;
  PatchSection patch;
  FitSection fit;
  NumericsSection numerics;
  OutputSection output;

  /// Cross-field checks; throws ConfigError.
  void validate() const;
};

/// INI text with `[section]` headers and `key = value` lines. A previous
/// output file is accepted too: its embedded configuration block is used.
/// Relative file paths resolve against `base_dir`.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// `section.key=value`; throws ConfigError on unknown keys or bad values.
void apply_override(RunConfig& config, const std::string& assignment);

/// Canonical INI text of every field; parses back to the same config.
std::string resolved_config_text(const RunConfig& config);

inline constexpr const char* kConfigBegin = "---- resolved configuration ----";
inline constexpr const char* kConfigEnd = "---- end configuration ----";

} // namespace casimir
