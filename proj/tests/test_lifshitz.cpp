#include <doctest.h>

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {
constexpr double kHbarC = 1.054571817e-34 * 299792458.0;

CavityConfig gold(double L, double T, bool plasma = false) {
  CavityConfig c;
  c.separation = L;
  c.temperature = T;
  c.mirror_a = c.mirror_b = plasma ? OpticalResponse::gold_plasma() : OpticalResponse::gold_drude();
  return c;
}
} // namespace

TEST_CASE("ideal mirrors at T = 0 reproduce the ideal law") {
  for (double L : {1e-7, 1e-6, 1e-5}) {
    CavityConfig c;
    c.separation = L;
    const PlaneResult r = evaluate_plane(c);
    CHECK(r.pressure == doctest::Approx(-pi * pi * kHbarC / (240 * std::pow(L, 4))).epsilon(1e-9));
    CHECK(r.free_energy_per_area == doctest::Approx(-pi * pi * kHbarC / (720 * std::pow(L, 3))).epsilon(1e-9));
    CHECK(r.pressure == doctest::Approx(ideal_pressure(L)).epsilon(1e-9));
  }
  CHECK(ideal_energy(1e-6, 2.0) == doctest::Approx(2.0 * ideal_free_energy_per_area(1e-6)));
}

TEST_CASE("1-D toy against the regularized mode sum") {
  CHECK(casimir_1d_energy(1e-6, 1.0, 1.0) == doctest::Approx(oracle::mode_sum_1d_energy(1e-6)).epsilon(1e-8));
  CHECK(casimir_1d_energy(1e-6, 1.0, 1.0) == doctest::Approx(-pi * kHbarC / 24e-6).epsilon(1e-12));
  // opposite signs repel; zero reflection gives nothing
  CHECK(casimir_1d_energy(1e-6, 1.0, -1.0) > 0.0);
  CHECK(casimir_1d_energy(1e-6, 0.0, 1.0) == 0.0);
  CHECK_THROWS_AS(casimir_1d_energy(1e-6, 1.2, 1.0), DomainError);
}

TEST_CASE("perfect mirrors at high temperature approach the classical limit") {
  CavityConfig c;
  c.separation = 20e-6;
  c.temperature = 300.0;
  const double limit = -2.0 * 1.2020569031595942 * PhysicalConstants::k_B * 300.0 / (8 * pi * std::pow(20e-6, 3));
  CHECK(pressure(c) == doctest::Approx(limit).epsilon(2e-3));
}

TEST_CASE("Drude large-distance limit keeps only the TM zero mode") {
  const double L = 50e-6, T = 300.0;
  const double limit = -1.2020569031595942 * PhysicalConstants::k_B * T / (8 * pi * L * L * L);
  CHECK(pressure(gold(L, T)) == doctest::Approx(limit).epsilon(0.02));
  const double ratio = pressure(gold(L, T, true)) / pressure(gold(L, T));
  CHECK(ratio >= 1.85);
  CHECK(ratio <= 2.0);
}

TEST_CASE("pressure is minus the derivative of the free energy") {
  for (double T : {0.0, 300.0}) {
    for (double L : {0.3e-6, 2e-6}) {
      const auto f = [T](double x) { return free_energy_per_area(gold(x, T)); };
      CHECK(pressure(gold(L, T)) == doctest::Approx(-oracle::central_derivative(f, L, 1e-3 * L)).epsilon(1e-6));
    }
  }
}

TEST_CASE("finite temperature tends to the T = 0 result") {
  const double p0 = pressure(gold(0.5e-6, 0.0));
  const double p1 = pressure(gold(0.5e-6, 1.0));
  CHECK(p1 == doctest::Approx(p0).epsilon(1e-4));
}

TEST_CASE("model ordering and magnitude anchors at 160 nm") {
  const double drude = pressure(gold(160e-9, 300.0));
  const double plasma = pressure(gold(160e-9, 300.0, true));
  CavityConfig ideal;
  ideal.separation = 160e-9;
  ideal.temperature = 300.0;
  CHECK(std::abs(pressure(ideal)) > std::abs(plasma));
  CHECK(std::abs(plasma) > std::abs(drude));
  CHECK(std::abs(drude) > 0.75);
  CHECK(std::abs(drude) < 1.3);
  const double diff = pressure_difference(gold(160e-9, 300.0), OpticalResponse::gold_plasma());
  CHECK(diff == doctest::Approx(plasma - drude).epsilon(1e-12));
  CHECK(std::abs(diff) > 0.020);
  CHECK(std::abs(diff) < 0.100);
}

TEST_CASE("pressure_difference on a grid matches point evaluations") {
  Eigen::ArrayXd L(3);
  L << 0.2e-6, 0.5e-6, 1e-6;
  const Eigen::ArrayXd d = pressure_difference(gold(1e-6, 300.0), OpticalResponse::gold_plasma(), L);
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(d(i) == doctest::Approx(pressure_difference(gold(L(i), 300.0), OpticalResponse::gold_plasma())));
  }
}

TEST_CASE("identical mirrors give zero difference") {
  CHECK(pressure_difference(gold(0.3e-6, 300.0), OpticalResponse::gold_drude()) == 0.0);
}

TEST_CASE("Gauss-Laguerre option agrees at its own tolerance") {
  NumericsOptions gl;
  gl.quadrature = QuadratureKind::GaussLaguerre;
  gl.quadrature_nodes = 120;
  CHECK(pressure(gold(0.5e-6, 300.0), gl) == doctest::Approx(pressure(gold(0.5e-6, 300.0))).epsilon(1e-5));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(pressure(gold(0.0, 300.0)), DomainError);
  CHECK_THROWS_AS(pressure(gold(1e-6, -1.0)), DomainError);
}

TEST_CASE("result diagnostics") {
  const PlaneResult r = evaluate_plane(gold(1e-6, 300.0));
  CHECK(r.truncation_index > 0);
  CHECK(r.truncation_error_estimate <= 1e-8);
  CHECK(evaluate_plane(gold(1e-6, 0.0)).truncation_index == 0);
}
