#pragma once

namespace casimir {

/// CODATA 2018 exact / recommended values, SI units.
struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;          // J s
  static constexpr double c = 299792458.0;                 // m / s
  static constexpr double k_B = 1.380649e-23;              // J / K
  static constexpr double epsilon_0 = 8.8541878128e-12;    // F / m
  static constexpr double electron_volt = 1.602176634e-19; // J
};

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double zeta3 = 1.2020569031595942854;

/// Angular frequency (rad/s) of a photon energy quoted in eV.
constexpr double ev_to_rad_per_s(double energy_ev) {
  return energy_ev * PhysicalConstants::electron_volt / PhysicalConstants::hbar;
}

constexpr double rad_per_s_to_ev(double omega) {
  return omega * PhysicalConstants::hbar / PhysicalConstants::electron_volt;
}

} // namespace casimir
