#include "casimir/pfa.hpp"

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

void check_pfa_validity(const SphereGeometry& geometry, const PfaOptions& options) {
  if (!(geometry.radius > 0.0) || !std::isfinite(geometry.radius)) {
    throw DomainError("sphere radius must be positive and finite");
  }
  if (!(geometry.separation > 0.0) || !std::isfinite(geometry.separation)) {
    throw DomainError("separation must be positive and finite");
  }
  // relative slack so R/L computed as exactly the limit passes
  if (!options.allow_outside_validity &&
      geometry.aspect_ratio() < options.min_aspect_ratio * (1.0 - 1e-12)) {
    std::ostringstream os;
    os << "PFA requires R/L >= " << options.min_aspect_ratio << ", got R/L = "
       << geometry.aspect_ratio();
    throw ValidityError(os.str());
  }
}

SphereResult evaluate_sphere(const SphereGeometry& geometry, double temperature,
                             const OpticalResponse& mirror_a, const OpticalResponse& mirror_b,
                             const PfaOptions& options, const NumericsOptions& numerics) {
  check_pfa_validity(geometry, options);
  SphereResult result;
  result.plane = evaluate_plane({geometry.separation, temperature, mirror_a, mirror_b}, numerics);
  const double circumference = 2.0 * pi * geometry.radius;
  result.force = circumference * result.plane.free_energy_per_area;
  result.force_gradient = circumference * result.plane.pressure;
  return result;
}

double pfa_force(const SphereGeometry& geometry, double temperature, const OpticalResponse& mirror_a,
                 const OpticalResponse& mirror_b, const PfaOptions& options,
                 const NumericsOptions& numerics) {
  return evaluate_sphere(geometry, temperature, mirror_a, mirror_b, options, numerics).force;
}

double pfa_force_gradient(const SphereGeometry& geometry, double temperature,
                          const OpticalResponse& mirror_a, const OpticalResponse& mirror_b,
                          const PfaOptions& options, const NumericsOptions& numerics) {
  return evaluate_sphere(geometry, temperature, mirror_a, mirror_b, options, numerics).force_gradient;
}

} // namespace casimir
