#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <Eigen/Dense>

namespace casimir {

/// Distance-indexed pressure values with one-sigma uncertainties.
struct MeasurementSeries {
  Eigen::ArrayXd separation; // m, strictly increasing
  Eigen::ArrayXd value;      // Pa
  Eigen::ArrayXd sigma;      // Pa
  std::string label;

  Eigen::Index size() const { return separation.size(); }

  /// Throws DomainError unless the columns agree in length, separations are
  /// positive and strictly increasing and sigmas are non-negative.
  void validate() const;
  /// Additionally requires sigma > 0 at every point.
  void validate_for_weighting() const;
};

/// data - theory point by point; sigma is carried over from data.
MeasurementSeries residuals(const MeasurementSeries& data, const MeasurementSeries& theory);

/// CSV `L_m, pressure_Pa, sigma_Pa`; `#` comments and one optional
/// non-numeric column-name line are skipped.
MeasurementSeries read_series_csv(std::istream& in, std::string label = {});
MeasurementSeries load_series_csv(const std::filesystem::path& path);

void write_series_csv(std::ostream& out, const MeasurementSeries& series);

} // namespace casimir
