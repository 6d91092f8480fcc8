#include "casimir/workbench.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/constants.hpp"
#include "casimir/pfa.hpp"

namespace casimir {

namespace {

std::string model_label(const RunConfig& c) {
  if (c.material_b.model == c.material.model) return c.material.model;
  return c.material.model + "|" + c.material_b.model;
}

CavityConfig cavity(const RunConfig& c, double separation) {
  CavityConfig cav;
  cav.separation = separation;
  cav.temperature = c.temperature_k;
  cav.mirror_a = c.material.build();
  cav.mirror_b = c.material_b.build();
  return cav;
}

void require_plane(const RunConfig& c, const std::string& command) {
  if (c.geometry.type != "plane") {
    throw ConfigError(command + " needs geometry.type = plane");
  }
}

} // namespace

RunOutput run_pressure_curve(const RunConfig& config) {
  require_plane(config, "pressure");
  RunOutput out{"pressure", {{"L_m", "pressure_Pa", "free_energy_per_area_J_m2", "model", "T_K"}, {}}, {}, {}};
  const NumericsOptions numerics = config.numerics.options();
  const std::string label = model_label(config);
  for (double L : config.grid.separations()) {
    const PlaneResult r = evaluate_plane(cavity(config, L), numerics);
    out.table.rows.push_back({L, r.pressure, r.free_energy_per_area, label, config.temperature_k});
  }
  return out;
}

RunOutput run_energy_curve(const RunConfig& config) {
  require_plane(config, "energy");
  RunOutput out{"energy",
                {{"L_m", "free_energy_per_area_J_m2", "ideal_free_energy_per_area_J_m2", "model", "T_K"}, {}},
                {"ideal column: perfect mirrors at T = 0"},
                {}};
  const NumericsOptions numerics = config.numerics.options();
  const std::string label = model_label(config);
  for (double L : config.grid.separations()) {
    const PlaneResult r = evaluate_plane(cavity(config, L), numerics);
    out.table.rows.push_back({L, r.free_energy_per_area, ideal_free_energy_per_area(L), label, config.temperature_k});
  }
  return out;
}

RunOutput run_compare(const RunConfig& config) {
  require_plane(config, "compare");
  RunOutput out{"compare",
                {{"L_m", "base_pressure_Pa", "alt_pressure_Pa", "perfect_pressure_Pa", "ratio_alt_base",
                  "ratio_base_perfect", "ratio_alt_perfect", "alt_minus_base_Pa", "magnitude_difference_Pa",
                  "T_K"},
                 {}},
                {"base = [material]/[material_b], alt = [alt_material] on both mirrors",
                 "magnitude_difference_Pa = |P_alt| - |P_base|"},
                {}};
  const NumericsOptions numerics = config.numerics.options();
  const OpticalResponse alt = config.alt_material.build();
  for (double L : config.grid.separations()) {
    CavityConfig base = cavity(config, L);
    const double p_base = pressure(base, numerics);
    CavityConfig other = base;
    other.mirror_a = other.mirror_b = alt;
    const double p_alt = pressure(other, numerics);
    CavityConfig ideal = base;
    ideal.mirror_a = ideal.mirror_b = OpticalResponse::perfect();
    const double p_perfect = pressure(ideal, numerics);
    out.table.rows.push_back({L, p_base, p_alt, p_perfect, p_alt / p_base, p_base / p_perfect,
                              p_alt / p_perfect, p_alt - p_base, std::abs(p_alt) - std::abs(p_base),
                              config.temperature_k});
  }
  return out;
}

RunOutput run_pfa(const RunConfig& config) {
  if (config.geometry.type != "sphere") throw ConfigError("pfa needs geometry.type = sphere");
  RunOutput out{"pfa",
                {{"L_m", "R_m", "force_N", "force_gradient_N_m", "pressure_Pa", "free_energy_per_area_J_m2",
                  "aspect_ratio", "T_K"},
                 {}},
                {"force = 2 pi R F/A; force_gradient = 2 pi R P = -dF/dL (negative for attraction)"},
                {}};
  const NumericsOptions numerics = config.numerics.options();
  const PfaOptions pfa{config.geometry.min_aspect_ratio, config.geometry.allow_outside_validity};
  const OpticalResponse a = config.material.build();
  const OpticalResponse b = config.material_b.build();
  for (double L : config.grid.separations()) {
    const SphereGeometry g{L, config.geometry.sphere_radius_m};
    const SphereResult r = evaluate_sphere(g, config.temperature_k, a, b, pfa, numerics);
    out.table.rows.push_back({L, g.radius, r.force, r.force_gradient, r.plane.pressure,
                              r.plane.free_energy_per_area, g.aspect_ratio(), config.temperature_k});
  }
  return out;
}

RunOutput run_patch_spectrum(const RunConfig& config) {
  const PatchSpectrum s = config.patch.spectrum();
  RunOutput out{"patch-spectrum", {{"k_rad_per_m", "S_V2_m2"}, {}}, {}, {}};
  out.notes.push_back("normalization: <V^2> = int d^2k/(2pi)^2 S(k) = int_0^inf k dk/(2pi) S(k)");
  out.notes.push_back("variance_v2 = " + format_sci(s.variance()));
  for (const std::string& line : s.provenance()) out.notes.push_back(line);
  if (s.kind() == SpectrumKind::Sampled) {
    for (Eigen::Index i = 0; i < s.wavevectors().size(); ++i) {
      out.table.rows.push_back({s.wavevectors()(i), s.density()(i)});
    }
    return out;
  }
  out.notes.push_back("sharp cutoff written as a step with duplicated knots");
  const double lo = s.k_min(), hi = s.k_max(), nudge = 1e-6;
  out.table.rows = {{0.0, 0.0}, {lo * (1 - nudge), 0.0}, {lo, s.level()}, {hi, s.level()}, {hi * (1 + nudge), 0.0}};
  return out;
}

RunOutput run_patch_pressure(const RunConfig& config) {
  const bool sphere = config.geometry.type == "sphere";
  RunOutput out{"patch-pressure", {{"L_m", "pressure_Pa", "model", "v_rms_V", "l_max_m"}, {}}, {}, {}};
  out.notes.push_back("uncorrelated plates, same spectrum on both");
  if (sphere) {
    out.table.columns.push_back("force_gradient_N_m");
    out.notes.push_back("force_gradient = 2 pi R P");
  }
  const PatchSpectrum s = config.patch.spectrum();
  const MeasurementSeries curve = patch_pressure_curve(config.grid.separations(), s, s);
  for (Eigen::Index i = 0; i < curve.size(); ++i) {
    std::vector<Cell> row{curve.separation(i), curve.value(i), config.patch.model, config.patch.v_rms_v,
                          config.patch.l_max_m};
    if (sphere) row.push_back(2.0 * pi * config.geometry.sphere_radius_m * curve.value(i));
    out.table.rows.push_back(std::move(row));
  }
  return out;
}

RunOutput run_fit(const RunConfig& config) {
  if (config.fit.input_path.empty()) throw ConfigError("fit needs fit.input_path");
  const MeasurementSeries residual = load_series_csv(config.fit.input_path);
  const FitResult r = fit_patch_parameters(residual, config.patch.tessellation(), config.fit.bounds(),
                                           config.patch.seed, config.fit.options());
  RunOutput out{"fit", {{"L_m", "residual_Pa", "sigma_Pa", "model_Pa", "normalized_residual"}, {}}, {}, r};
  std::istringstream report(format_fit_report(r));
  for (std::string line; std::getline(report, line);) out.notes.push_back("fit." + line);
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    out.table.rows.push_back({residual.separation(i), residual.value(i), residual.sigma(i), r.fitted(i),
                              (residual.value(i) - r.fitted(i)) / residual.sigma(i)});
  }
  return out;
}

RunOutput run_command(const std::string& command, const RunConfig& config) {
  if (command == "pressure") return run_pressure_curve(config);
  if (command == "energy") return run_energy_curve(config);
  if (command == "compare") return run_compare(config);
  if (command == "pfa") return run_pfa(config);
  if (command == "patch-spectrum") return run_patch_spectrum(config);
  if (command == "patch-pressure") return run_patch_pressure(config);
  if (command == "fit") return run_fit(config);
  throw ConfigError("unknown command '" + command + "'");
}

namespace {

std::string cell_text(const Cell& cell) {
  if (const double* v = std::get_if<double>(&cell)) return format_sci(*v == 0.0 ? 0.0 : *v);
  return std::get<std::string>(cell);
}

void write_csv(std::ostream& out, const RunOutput& output, const RunConfig& config) {
  out << "# " << kToolName << ' ' << kToolVersion << '\n';
  out << "# command = " << output.command << '\n';
  out << "# " << kConfigBegin << '\n';
  std::istringstream text(resolved_config_text(config));
  for (std::string line; std::getline(text, line);) out << "# " << line << '\n';
  out << "# " << kConfigEnd << '\n';
  for (const std::string& note : output.notes) out << "# " << note << '\n';
  for (std::size_t c = 0; c < output.table.columns.size(); ++c) {
    out << (c ? "," : "") << output.table.columns[c];
  }
  out << '\n';
  for (const auto& row : output.table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << cell_text(row[c]);
    out << '\n';
  }
}

void write_structured(std::ostream& out, const RunOutput& output, const RunConfig& config) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["command"] = output.command;
  ordered_json sections = ordered_json::object();
  std::istringstream text(resolved_config_text(config));
  std::string section;
  for (std::string line; std::getline(text, line);) {
    if (line.size() > 2 && line.front() == '[') {
      section = line.substr(1, line.size() - 2);
      sections[section] = ordered_json::object();
      continue;
    }
    const auto eq = line.find(" = ");
    sections[section][line.substr(0, eq)] = line.substr(eq + 3);
  }
  doc["config"] = sections;
  doc["notes"] = output.notes;
  doc["columns"] = output.table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : output.table.rows) {
    ordered_json r = ordered_json::array();
    for (const Cell& cell : row) {
      if (const double* v = std::get_if<double>(&cell)) {
        r.push_back(*v == 0.0 ? 0.0 : *v);
      } else {
        r.push_back(std::get<std::string>(cell));
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  if (output.fit) {
    const FitResult& f = *output.fit;
    doc["fit"] = {{"l_max_m", f.l_max},
                  {"v_rms_V", f.v_rms},
                  {"chi_squared", f.chi_squared},
                  {"l_max_half_width_m", f.l_max_half_width},
                  {"v_rms_half_width_V", f.v_rms_half_width},
                  {"points", f.points},
                  {"iterations", f.iterations},
                  {"converged", f.converged},
                  {"flat_chi_squared", f.flat_chi_squared},
                  {"at_bound", f.at_bound},
                  {"magnitude_residuals", f.magnitude_residuals},
                  {"diagnostics", f.diagnostics}};
  }
  out << doc.dump(2) << '\n';
}

} // namespace

void write_output(std::ostream& out, const RunOutput& output, const RunConfig& config) {
  if (config.output.format == "structured") {
    write_structured(out, output, config);
  } else {
    write_csv(out, output, config);
  }
}

} // namespace casimir
