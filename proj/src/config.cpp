#include "casimir/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

std::string number_text(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
  return std::string(buffer, end);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [end, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || end != last || !std::isfinite(v)) {
    throw ConfigError(key + ": not a finite number: '" + text + "'");
  }
  return v;
}

template <typename Unsigned>
Unsigned parse_unsigned(const std::string& key, const std::string& text) {
  Unsigned v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError(key + ": not a non-negative integer: '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + text + "'");
}

std::string parse_choice(const std::string& key, const std::string& text,
                         const std::vector<std::string>& allowed) {
  for (const std::string& a : allowed) {
    if (text == a) return text;
  }
  std::string list;
  for (const std::string& a : allowed) list += (list.empty() ? "" : ", ") + a;
  throw ConfigError(key + ": '" + text + "' is not one of " + list);
}

struct Field {
  std::string section;
  std::string key;
  std::function<std::string()> get;
  std::function<void(const std::string&)> set;
};

using Fields = std::vector<Field>;

void add_number(Fields& f, const std::string& s, const std::string& k, double& v) {
  f.push_back({s, k, [&v] { return number_text(v); },
               [&v, name = s + "." + k](const std::string& t) { v = parse_double(name, t); }});
}

template <typename Unsigned>
void add_count(Fields& f, const std::string& s, const std::string& k, Unsigned& v) {
  f.push_back({s, k, [&v] { return std::to_string(v); },
               [&v, name = s + "." + k](const std::string& t) { v = parse_unsigned<Unsigned>(name, t); }});
}

void add_flag(Fields& f, const std::string& s, const std::string& k, bool& v) {
  f.push_back({s, k, [&v] { return std::string(v ? "true" : "false"); },
               [&v, name = s + "." + k](const std::string& t) { v = parse_bool(name, t); }});
}

void add_text(Fields& f, const std::string& s, const std::string& k, std::string& v) {
  f.push_back({s, k, [&v] { return v; }, [&v](const std::string& t) { v = t; }});
}

void add_choice(Fields& f, const std::string& s, const std::string& k, std::string& v,
                std::vector<std::string> allowed) {
  f.push_back({s, k, [&v] { return v; },
               [&v, allowed = std::move(allowed), name = s + "." + k](const std::string& t) { v = parse_choice(name, t, allowed); }});
}

void add_material(Fields& f, const std::string& s, MaterialSection& m) {
  add_choice(f, s, "model", m.model, {"perfect", "plasma", "drude", "tabulated"});
  add_number(f, s, "plasma_frequency_ev", m.plasma_frequency_ev);
  add_number(f, s, "damping_ev", m.damping_ev);
  add_text(f, s, "table_path", m.table_path);
  add_flag(f, s, "extrapolate", m.extrapolate);
}

Fields fields_of(RunConfig& c) {
  Fields f;
  add_material(f, "material", c.material);
  add_material(f, "material_b", c.material_b);
  add_material(f, "alt_material", c.alt_material);
  add_number(f, "thermal", "temperature_k", c.temperature_k);
  add_choice(f, "geometry", "type", c.geometry.type, {"plane", "sphere"});
  add_number(f, "geometry", "sphere_radius_m", c.geometry.sphere_radius_m);
  add_number(f, "geometry", "min_aspect_ratio", c.geometry.min_aspect_ratio);
  add_flag(f, "geometry", "allow_outside_validity", c.geometry.allow_outside_validity);
  add_number(f, "grid", "min_m", c.grid.min_m);
  add_number(f, "grid", "max_m", c.grid.max_m);
  add_count(f, "grid", "count", c.grid.count);
  add_choice(f, "grid", "spacing", c.grid.spacing, {"log", "linear"});
  add_choice(f, "patch", "model", c.patch.model, {"quasilocal", "sharp"});
  add_number(f, "patch", "v_rms_v", c.patch.v_rms_v);
  add_number(f, "patch", "l_min_m", c.patch.l_min_m);
  add_number(f, "patch", "l_max_m", c.patch.l_max_m);
  add_number(f, "patch", "window_m", c.patch.window_m);
  add_count(f, "patch", "resolution", c.patch.resolution);
  add_count(f, "patch", "realizations", c.patch.realizations);
  add_count(f, "patch", "seed", c.patch.seed);
  add_text(f, "fit", "input_path", c.fit.input_path);
  add_number(f, "fit", "l_max_lower_m", c.fit.l_max_lower_m);
  add_number(f, "fit", "l_max_upper_m", c.fit.l_max_upper_m);
  add_number(f, "fit", "v_rms_lower_v", c.fit.v_rms_lower_v);
  add_number(f, "fit", "v_rms_upper_v", c.fit.v_rms_upper_v);
  add_count(f, "fit", "grid_points", c.fit.grid_points);
  add_count(f, "fit", "max_iterations", c.fit.max_iterations);
  add_number(f, "fit", "rel_tol", c.fit.rel_tol);
  add_choice(f, "fit", "residual_sign", c.fit.residual_sign, {"auto", "signed", "magnitude"});
  add_choice(f, "numerics", "quadrature", c.numerics.quadrature, {"double_exponential", "gauss_laguerre"});
  add_count(f, "numerics", "quadrature_nodes", c.numerics.quadrature_nodes);
  add_number(f, "numerics", "matsubara_rel_tol", c.numerics.matsubara_rel_tol);
  add_number(f, "numerics", "zero_temperature_rel_tol", c.numerics.zero_temperature_rel_tol);
  add_count(f, "numerics", "max_matsubara_terms", c.numerics.max_matsubara_terms);
  add_choice(f, "output", "format", c.output.format, {"csv", "structured"});
  add_text(f, "output", "path", c.output.path);
  return f;
}

Field& find_field(Fields& fields, const std::string& section, const std::string& key) {
  for (Field& f : fields) {
    if (f.section == section && f.key == key) return f;
  }
  throw ConfigError("unknown configuration key '" + (section.empty() ? key : section + "." + key) + "'");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// The INI body: either the whole stream or the block embedded in a previous output.
std::string ini_body(std::istream& in) {
  std::ostringstream all;
  all << in.rdbuf();
  const std::string text = all.str();
  const std::string begin = std::string("# ") + kConfigBegin;
  if (text.find(begin) == std::string::npos) return text;

  std::istringstream lines(text);
  std::string line, body;
  bool inside = false;
  while (std::getline(lines, line)) {
    const std::string t = trim(line);
    if (t == begin) {
      inside = true;
    } else if (t == std::string("# ") + kConfigEnd) {
      return body;
    } else if (inside) {
      if (t.rfind("# ", 0) != 0) throw ConfigError("embedded configuration block is malformed");
      body += t.substr(2) + '\n';
    }
  }
  throw ConfigError("embedded configuration block is not terminated");
}

std::string resolve_path(const std::string& p, const std::filesystem::path& base_dir) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  if (path.is_absolute()) return p;
  return std::filesystem::absolute(base_dir / path).lexically_normal().string();
}

} // namespace

OpticalResponse MaterialSection::build() const {
  if (model == "perfect") return OpticalResponse::perfect();
  if (model == "plasma") return OpticalResponse::plasma(ev_to_rad_per_s(plasma_frequency_ev));
  if (model == "drude") {
    return OpticalResponse::drude(ev_to_rad_per_s(plasma_frequency_ev), ev_to_rad_per_s(damping_ev));
  }
  if (model == "tabulated") return load_tabulated(table_path, extrapolate);
  throw ConfigError("unknown material model '" + model + "'");
}

Eigen::ArrayXd GridSection::separations() const {
  const auto n = static_cast<Eigen::Index>(count);
  if (n == 1) return Eigen::ArrayXd::Constant(1, min_m);
  if (spacing == "log") {
    Eigen::ArrayXd out = Eigen::ArrayXd::LinSpaced(n, std::log(min_m), std::log(max_m)).exp();
    out(0) = min_m;
    out(n - 1) = max_m;
    return out;
  }
  return Eigen::ArrayXd::LinSpaced(n, min_m, max_m);
}

TessellationModel PatchSection::tessellation() const {
  TessellationModel m;
  m.l_min = l_min_m;
  m.l_max = l_max_m;
  m.v_rms = v_rms_v;
  m.window = window_m;
  m.resolution = resolution;
  m.realizations = realizations;
  m.seed = seed;
  return m;
}

PatchSpectrum PatchSection::spectrum() const {
  if (model == "sharp") return grain_cutoff_spectrum(l_min_m, l_max_m, v_rms_v);
  return quasilocal_spectrum(tessellation());
}

FitBounds FitSection::bounds() const {
  return {l_max_lower_m, l_max_upper_m, v_rms_lower_v, v_rms_upper_v};
}

FitOptions FitSection::options() const {
  FitOptions o;
  o.grid_points = grid_points;
  o.max_iterations = max_iterations;
  o.rel_tol = rel_tol;
  o.sign = residual_sign == "signed"      ? ResidualSign::Signed
           : residual_sign == "magnitude" ? ResidualSign::Magnitude
                                          : ResidualSign::Auto;
  return o;
}

NumericsOptions NumericsSection::options() const {
  NumericsOptions o;
  o.quadrature = quadrature == "gauss_laguerre" ? QuadratureKind::GaussLaguerre
                                                : QuadratureKind::DoubleExponential;
  o.quadrature_nodes = Eigen::Index(quadrature_nodes);
  o.matsubara_rel_tol = matsubara_rel_tol;
  o.zero_temperature_rel_tol = zero_temperature_rel_tol;
  o.max_matsubara_terms = max_matsubara_terms;
  return o;
}

void RunConfig::validate() const {
  for (const MaterialSection* m : {&material, &material_b, &alt_material}) {
    if (m->model == "tabulated") {
      if (m->table_path.empty()) throw ConfigError("tabulated material needs table_path");
      if (!std::filesystem::exists(m->table_path)) {
        throw ConfigError("material table not found: " + m->table_path);
      }
    }
    if ((m->model == "plasma" || m->model == "drude") && !(m->plasma_frequency_ev > 0.0)) {
      throw ConfigError("plasma_frequency_ev must be positive");
    }
    if (m->model == "drude" && !(m->damping_ev > 0.0)) {
      throw ConfigError("drude damping_ev must be positive (use model = plasma for zero damping)");
    }
  }
  if (!(temperature_k >= 0.0)) throw ConfigError("thermal.temperature_k must be >= 0");
  if (!(grid.min_m > 0.0)) throw ConfigError("grid.min_m must be positive");
  if (grid.count == 0) throw ConfigError("grid.count must be >= 1");
  if (grid.count > 1 && !(grid.max_m > grid.min_m)) throw ConfigError("grid.max_m must exceed grid.min_m");
  if (geometry.type == "sphere" && !(geometry.sphere_radius_m > 0.0)) {
    throw ConfigError("geometry.sphere_radius_m must be positive");
  }
  if (!(patch.v_rms_v >= 0.0)) throw ConfigError("patch.v_rms_v must be >= 0");
  if (!fit.input_path.empty() && !std::filesystem::exists(fit.input_path)) {
    throw ConfigError("fit input not found: " + fit.input_path);
  }
  if (numerics.quadrature_nodes < 8) throw ConfigError("numerics.quadrature_nodes must be >= 8");
  if (!(numerics.matsubara_rel_tol > 0.0) || !(numerics.zero_temperature_rel_tol > 0.0)) {
    throw ConfigError("numerics tolerances must be positive");
  }
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  std::istringstream body(ini_body(in));
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigINI().from_config(body);
  } catch (const CLI::Error& e) {
    throw ConfigError(std::string("configuration syntax: ") + e.what());
  }

  RunConfig config;
  Fields fields = fields_of(config);
  bool material_b_given = false;
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (item.parents.size() != 1) {
      throw ConfigError("configuration key '" + item.fullname() + "' must sit in one [section]");
    }
    const std::string& section = item.parents.front();
    if (item.inputs.size() > 1) throw ConfigError(item.fullname() + ": expected a single value");
    const std::string value = item.inputs.empty() ? std::string() : item.inputs.front();
    find_field(fields, section, item.name).set(value);
    if (section == "material_b") material_b_given = true;
  }
  if (!material_b_given) config.material_b = config.material;
  for (MaterialSection* m : {&config.material, &config.material_b, &config.alt_material}) {
    m->table_path = resolve_path(m->table_path, base_dir);
  }
  config.fit.input_path = resolve_path(config.fit.input_path, base_dir);
  config.validate();
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open configuration " + path.string());
  return parse_config(in, path.parent_path());
}

void apply_override(RunConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override must read section.key=value: '" + assignment + "'");
  }
  const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  std::string value = trim(assignment.substr(eq + 1));
  if (key.size() > 5 && key.compare(key.size() - 5, 5, "_path") == 0 && key != "path") {
    value = resolve_path(value, std::filesystem::current_path());
  }
  Fields fields = fields_of(config);
  find_field(fields, trim(assignment.substr(0, dot)), key).set(value);
}

std::string resolved_config_text(const RunConfig& config) {
  RunConfig copy = config;
  std::ostringstream out;
  std::string section;
  for (const Field& f : fields_of(copy)) {
    if (f.section != section) {
      section = f.section;
      out << '[' << section << "]\n";
    }
    out << f.key << " = " << f.get() << '\n';
  }
  return out.str();
}

} // namespace casimir
