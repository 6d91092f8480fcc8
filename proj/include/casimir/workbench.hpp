#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/fit.hpp"

namespace casimir {

inline constexpr const char* kToolName = "casimir-workbench";
inline constexpr const char* kToolVersion = "1.0.0";

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Result of one subcommand: a table plus `#` note lines and, for fits, the
/// fit result.
struct RunOutput {
  std::string command;
  Table table;
  std::vector<std::string> notes;
  std::optional<FitResult> fit;
};

/// `L_m, pressure_Pa, free_energy_per_area_J_m2, model, T_K`
RunOutput run_pressure_curve(const RunConfig& config);
/// `L_m, free_energy_per_area_J_m2, ideal_free_energy_per_area_J_m2, model, T_K`
RunOutput run_energy_curve(const RunConfig& config);
/// Base mirrors against the alternative material and perfect mirrors; the
/// ratio column is P_alt / P_base.
RunOutput run_compare(const RunConfig& config);
/// Sphere-plane PFA force and force gradient.
RunOutput run_pfa(const RunConfig& config);
/// `k_rad_per_m, S_V2_m2`
RunOutput run_patch_spectrum(const RunConfig& config);
/// Uncorrelated plates with the configured spectrum on both sides.
RunOutput run_patch_pressure(const RunConfig& config);
/// Fit of the quasi-local model to the residual file in [fit] input_path.
RunOutput run_fit(const RunConfig& config);

/// Dispatch by subcommand name; throws ConfigError for unknown names.
RunOutput run_command(const std::string& command, const RunConfig& config);

/// CSV with the resolved configuration as `#` header lines, or a JSON
/// document when output.format = structured.
void write_output(std::ostream& out, const RunOutput& output, const RunConfig& config);

} // namespace casimir
