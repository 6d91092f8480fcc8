#include "casimir/reflection.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

double plasma_static_te(double plasma_frequency, double k) {
  const double q2 = std::pow(plasma_frequency / PhysicalConstants::c, 2);
  const double root = std::sqrt(k * k + q2);
  return -q2 / ((k + root) * (k + root));
}

} // namespace

AxialWavevector axial_wavevector(double xi, double k, double epsilon) {
  const double q = xi / PhysicalConstants::c;
  const double kappa = std::sqrt(k * k + q * q);
  const double kappa_medium = std::isinf(epsilon)
                                  ? std::numeric_limits<double>::infinity()
                                  : std::sqrt(kappa * kappa + (epsilon - 1.0) * q * q);
  return {kappa, kappa_medium};
}

double fresnel_from_epsilon(double epsilon, Polarization polarization, double kappa,
                            double xi_over_c) {
  if (std::isinf(epsilon)) return polarization == Polarization::TE ? -1.0 : 1.0;
  const double excess = (epsilon - 1.0) * xi_over_c * xi_over_c;
  const double kappa_medium = std::sqrt(kappa * kappa + excess);
  if (polarization == Polarization::TE) {
    const double sum = kappa + kappa_medium;
    return -excess / (sum * sum);
  }
  const double ek = epsilon * kappa;
  return (ek - kappa_medium) / (ek + kappa_medium);
}

double fresnel(const OpticalResponse& response, Polarization polarization, double xi, double k) {
  require_positive(xi, "imaginary frequency");
  require_positive(k, "transverse wavevector");
  if (response.model() == MaterialModel::Perfect) {
    return polarization == Polarization::TE ? -1.0 : 1.0;
  }
  const double eps = epsilon_at_imaginary(response, xi);
  const double q = xi / PhysicalConstants::c;
  return fresnel_from_epsilon(eps, polarization, std::sqrt(k * k + q * q), q);
}

ReflectionAmplitude reflection_amplitude(const OpticalResponse& response,
                                         Polarization polarization, double xi, double k) {
  return {polarization, xi, k, fresnel(response, polarization, xi, k)};
}

double zero_frequency_reflection(const OpticalResponse& response, Polarization polarization,
                                 double k) {
  require_positive(k, "transverse wavevector");
  const bool te = polarization == Polarization::TE;
  switch (response.model()) {
    case MaterialModel::Perfect: return te ? -1.0 : 1.0;
    case MaterialModel::Drude: return te ? 0.0 : 1.0;
    case MaterialModel::Plasma: return te ? plasma_static_te(response.plasma_frequency(), k) : 1.0;
    case MaterialModel::Tabulated: break;
  }
  if (!response.extrapolates()) {
    throw RangeError("zero-frequency reflection of a tabulated response needs its low-frequency tail");
  }
  switch (response.low_frequency_tail()) {
    case LowFrequencyTail::Drude: return te ? 0.0 : 1.0;
    case LowFrequencyTail::Plasma:
      return te ? plasma_static_te(std::sqrt(response.low_tail_strength()), k) : 1.0;
    case LowFrequencyTail::Dielectric: {
      const double eps0 = response.low_tail_static_epsilon();
      return te ? 0.0 : (eps0 - 1.0) / (eps0 + 1.0);
    }
    case LowFrequencyTail::Transparent: return 0.0;
  }
  return 0.0;
}

double zero_frequency_reflection_squared(const OpticalResponse& response,
                                         Polarization polarization, double k) {
  const double r = zero_frequency_reflection(response, polarization, k);
  return r * r;
}

} // namespace casimir
