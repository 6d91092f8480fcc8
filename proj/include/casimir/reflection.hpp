#pragma once

#include "casimir/materials.hpp"

namespace casimir {

enum class Polarization { TE, TM };

inline constexpr Polarization kPolarizations[] = {Polarization::TE, Polarization::TM};

/// Axial wavevectors in vacuum and inside the mirror at imaginary frequency.
struct AxialWavevector {
  double kappa;        // sqrt(k^2 + xi^2/c^2)
  double kappa_medium; // sqrt(k^2 + eps xi^2/c^2)
};

AxialWavevector axial_wavevector(double xi, double k, double epsilon);

struct ReflectionAmplitude {
  Polarization polarization;
  double xi;
  double k;
  double value;
};

/// Fresnel amplitude from a known permittivity and vacuum axial wavevector.
/// `xi_over_c` enters only through (eps - 1) xi^2 / c^2, which keeps the
/// weak-reflection TE limit free of cancellation. eps = +inf gives the
/// perfect-mirror values -1 (TE) and +1 (TM).
double fresnel_from_epsilon(double epsilon, Polarization polarization, double kappa,
                            double xi_over_c);

/// Specular Fresnel amplitude of a semi-infinite bulk mirror at imaginary
/// frequency xi > 0 and transverse wavevector k > 0.
///   TE: (kappa - kappa_t) / (kappa + kappa_t)
///   TM: (eps kappa - kappa_t) / (eps kappa + kappa_t)
double fresnel(const OpticalResponse& response, Polarization polarization, double xi, double k);

ReflectionAmplitude reflection_amplitude(const OpticalResponse& response,
                                         Polarization polarization, double xi, double k);

/// Signed amplitude of the xi = 0 Matsubara term, taken analytically.
/// Drude: TE 0, TM 1. Plasma: TE -(wp/c)^2 / (k + sqrt(k^2 + (wp/c)^2))^2,
/// TM 1. Perfect: -1, +1. Tabulated follows its low-frequency tail.
double zero_frequency_reflection(const OpticalResponse& response, Polarization polarization,
                                 double k);

double zero_frequency_reflection_squared(const OpticalResponse& response,
                                         Polarization polarization, double k);

} // namespace casimir
