#include "casimir/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir {

void MeasurementSeries::validate() const {
  const Eigen::Index n = separation.size();
  if (value.size() != n || sigma.size() != n) {
    throw DomainError("measurement series columns differ in length");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(separation(i) > 0.0) || !std::isfinite(separation(i))) {
      throw DomainError("measurement separations must be positive");
    }
    if (i > 0 && !(separation(i) > separation(i - 1))) {
      throw DomainError("measurement separations must be strictly increasing");
    }
    if (!std::isfinite(value(i)) || !(sigma(i) >= 0.0)) {
      throw DomainError("measurement values must be finite with sigma >= 0");
    }
  }
}

void MeasurementSeries::validate_for_weighting() const {
  validate();
  if ((sigma <= 0.0).any()) throw DomainError("weighted fits need sigma > 0 at every point");
}

MeasurementSeries residuals(const MeasurementSeries& data, const MeasurementSeries& theory) {
  data.validate();
  theory.validate();
  if (data.size() != theory.size()) {
    throw AlignmentError("residuals: data and theory have different lengths");
  }
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const double scale = std::max(std::abs(data.separation(i)), std::abs(theory.separation(i)));
    if (std::abs(data.separation(i) - theory.separation(i)) > 1e-12 * scale) {
      throw AlignmentError("residuals: separation grids differ at index " + std::to_string(i));
    }
  }
  MeasurementSeries out;
  out.separation = data.separation;
  out.value = data.value - theory.value;
  out.sigma = data.sigma;
  out.label = data.label + " - " + theory.label;
  return out;
}

MeasurementSeries read_series_csv(std::istream& in, std::string label) {
  std::vector<double> l, v, s;
  std::string line;
  int line_no = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0, b = 0, c = 0;
    if (!(fields >> a >> b >> c)) {
      if (!seen_data && std::isalpha(static_cast<unsigned char>(line[first]))) {
        seen_data = true; // column names
        continue;
      }
      throw ConfigError("series line " + std::to_string(line_no) + ": expected L_m, pressure_Pa, sigma_Pa");
    }
    seen_data = true;
    l.push_back(a);
    v.push_back(b);
    s.push_back(c);
  }
  MeasurementSeries series;
  series.separation = Eigen::Map<Eigen::ArrayXd>(l.data(), Eigen::Index(l.size()));
  series.value = Eigen::Map<Eigen::ArrayXd>(v.data(), Eigen::Index(v.size()));
  series.sigma = Eigen::Map<Eigen::ArrayXd>(s.data(), Eigen::Index(s.size()));
  series.label = std::move(label);
  try {
    series.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("series: ") + e.what());
  }
  return series;
}

MeasurementSeries load_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file " + path.string());
  return read_series_csv(in, path.filename().string());
}

void write_series_csv(std::ostream& out, const MeasurementSeries& series) {
  out << "L_m,pressure_Pa,sigma_Pa\n";
  for (Eigen::Index i = 0; i < series.size(); ++i) {
    out << format_exact(series.separation(i)) << ',' << format_exact(series.value(i)) << ','
        << format_exact(series.sigma(i)) << '\n';
  }
}

} // namespace casimir
