#pragma once

#include "casimir/lifshitz.hpp"

namespace casimir {

struct SphereGeometry {
  double separation = 1e-6; // closest approach L, m
  double radius = 150e-6;   // R, m

  double aspect_ratio() const { return radius / separation; }
};

struct PfaOptions {
  double min_aspect_ratio = 100.0;
  bool allow_outside_validity = false;
};

/// Throws ValidityError when R/L is below the threshold and no override is set.
void check_pfa_validity(const SphereGeometry& geometry, const PfaOptions& options);

/// Proximity force approximation: F = 2 pi R (F/A)(L).
double pfa_force(const SphereGeometry& geometry, double temperature, const OpticalResponse& mirror_a,
                 const OpticalResponse& mirror_b, const PfaOptions& options = {},
                 const NumericsOptions& numerics = {});

/// 2 pi R P(L), the plane pressure scaled by the sphere radius. This is the
/// quantity reported as the force gradient by dynamic measurements. It is
/// negative for attraction and equals minus the L-derivative of pfa_force.
double pfa_force_gradient(const SphereGeometry& geometry, double temperature,
                          const OpticalResponse& mirror_a, const OpticalResponse& mirror_b,
                          const PfaOptions& options = {}, const NumericsOptions& numerics = {});

struct SphereResult {
  PlaneResult plane;
  double force = 0.0;          // N
  double force_gradient = 0.0; // N/m
};

SphereResult evaluate_sphere(const SphereGeometry& geometry, double temperature,
                             const OpticalResponse& mirror_a, const OpticalResponse& mirror_b,
                             const PfaOptions& options = {}, const NumericsOptions& numerics = {});

} // namespace casimir
