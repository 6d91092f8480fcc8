#include <doctest.h>

#include <cmath>

#include "casimir/errors.hpp"
#include "casimir/matsubara.hpp"

using namespace casimir;

TEST_CASE("Matsubara frequencies") {
  const double xi1 = 2.0 * 3.14159265358979323846 * 1.380649e-23 * 300.0 / 1.054571817e-34;
  CHECK(matsubara_frequency(300.0, 1) == doctest::Approx(xi1).epsilon(1e-14));
  CHECK(matsubara_frequency(300.0, 7) == doctest::Approx(7 * xi1).epsilon(1e-14));
  CHECK(matsubara_frequency(300.0, 0) == 0.0);
}

TEST_CASE("grid weights follow the primed sum") {
  const MatsubaraGrid g = build_grid_with_terms(300.0, 10);
  REQUIRE(g.frequencies.size() == 11);
  CHECK(g.weights(0) == 0.5);
  CHECK((g.weights.tail(10) == 1.0).all());
  CHECK(g.truncation_index == 10);
}

TEST_CASE("truncation grows with separation x temperature and meets its bound") {
  const MatsubaraGrid small = build_grid(300.0, 1e-7, 1e-8);
  const MatsubaraGrid large = build_grid(300.0, 1e-6, 1e-8);
  CHECK(small.truncation_index > large.truncation_index);
  CHECK(large.truncation_error_estimate <= 1e-8);
  const MatsubaraGrid tight = build_grid(300.0, 1e-6, 1e-12);
  CHECK(tight.truncation_index > large.truncation_index);
}

TEST_CASE("invalid grids") {
  CHECK_THROWS_AS(build_grid(0.0, 1e-6, 1e-8), DomainError);
  CHECK_THROWS_AS(build_grid(300.0, -1.0, 1e-8), DomainError);
  CHECK_THROWS_AS(build_grid(300.0, 1e-6, 2.0), DomainError);
  CHECK_THROWS_AS(build_grid(1e-3, 1e-9, 1e-8, 100), NumericalError);
}
