#include <doctest.h>

#include <cmath>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/patch.hpp"
#include "casimir/quadrature.hpp"
#include "oracles.hpp"

using namespace casimir;

namespace {
PatchSpectrum band(double k0, double v_rms) {
  return PatchSpectrum::sharp_cutoff(k0 * (1 - 1e-5), k0 * (1 + 1e-5), v_rms);
}

// shared default spectrum; drawing it once keeps the suite fast
const PatchSpectrum& default_quasilocal() {
  static const PatchSpectrum s = quasilocal_spectrum(TessellationModel{});
  return s;
}
} // namespace

TEST_CASE("sharp cutoff spectrum") {
  const auto s = PatchSpectrum::sharp_cutoff(1e6, 5e7, 0.081);
  CHECK(s.level() == doctest::Approx(4 * pi * 0.081 * 0.081 / (25e14 - 1e12)).epsilon(1e-14));
  CHECK(s.variance() == doctest::Approx(0.081 * 0.081).epsilon(1e-14));
  CHECK(s(5e5) == 0.0);
  CHECK(s(1e7) == s.level());
  CHECK(s(6e7) == 0.0);
  CHECK(PatchSpectrum::sharp_cutoff(1e6, 5e7, 0.0).is_zero());
  CHECK_THROWS_AS(PatchSpectrum::sharp_cutoff(5e7, 1e6, 0.1), DomainError);
  CHECK_THROWS_AS(PatchSpectrum::sharp_cutoff(1e6, 1e6, 0.1), DomainError);
}

TEST_CASE("grain-derived cutoffs") {
  const auto s = grain_cutoff_spectrum(50e-9, 300e-9, 0.081);
  CHECK(s.k_min() == doctest::Approx(2 * pi / 300e-9).epsilon(1e-15));
  CHECK(s.k_max() == doctest::Approx(2 * pi / 50e-9).epsilon(1e-15));
}

TEST_CASE("sampled spectrum normalization is exact for piecewise-linear S") {
  Eigen::ArrayXd k(3), S(3);
  k << 0.0, 1e7, 2e7;
  S << 2e-16, 2e-16, 0.0;
  const auto s = PatchSpectrum::sampled(k, S);
  // int k S dk / 2pi: flat part + linear ramp
  const double flat = 2e-16 * 0.5e14;
  const double ramp = 2e-16 * (2e7 * (4e14 - 1e14) / 2 - (8e21 - 1e21) / 3) / 1e7;
  CHECK(s.variance() == doctest::Approx((flat + ramp) / (2 * pi)).epsilon(1e-12));
  CHECK(s.scaled(4.0).variance() == doctest::Approx(4 * s.variance()));
  CHECK_THROWS_AS(PatchSpectrum::sampled(k.head(1), S.head(1)), DomainError);
}

TEST_CASE("tessellation model invariants") {
  TessellationModel m;
  CHECK_NOTHROW(m.validate());
  auto bad = m;
  bad.l_max = m.window / 4;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = m;
  bad.resolution = 16; // cell 150 nm > l_min / 4
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = m;
  bad.realizations = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = m;
  bad.l_min = 400e-9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK(m.seed_count() == std::size_t(std::ceil(std::pow(2.4e-6 / 175e-9, 2))));
}

TEST_CASE("rasterized field assigns every pixel its nearest site") {
  TessellationModel m;
  m.l_min = 100e-9;
  m.l_max = 700e-9;
  m.window = 3e-6;
  m.resolution = 120;
  const Tessellation t = draw_tessellation(m, 3);
  const Eigen::MatrixXd f = rasterize(t, m);
  const double h = m.cell_size();
  int mismatches = 0;
  for (int i = 0; i < 120; i += 3) {
    for (int j = 0; j < 120; j += 3) {
      const double x = (i + 0.5) * h, y = (j + 0.5) * h;
      double best = 1e300;
      Eigen::Index nearest = 0;
      for (Eigen::Index s = 0; s < t.sites.rows(); ++s) {
        double dx = t.sites(s, 0) - x, dy = t.sites(s, 1) - y;
        dx -= m.window * std::nearbyint(dx / m.window);
        dy -= m.window * std::nearbyint(dy / m.window);
        if (dx * dx + dy * dy < best) {
          best = dx * dx + dy * dy;
          nearest = s;
        }
      }
      if (f(i, j) != t.voltages(nearest)) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("quasi-local spectrum: normalization, determinism, smoothness") {
  const PatchSpectrum& s = default_quasilocal();
  CHECK(s.kind() == SpectrumKind::Sampled);
  CHECK(s.variance() == doctest::Approx(0.081 * 0.081).epsilon(0.02));
  CHECK((s.density() >= 0.0).all());

  const PatchSpectrum again = quasilocal_spectrum(TessellationModel{});
  CHECK((again.density() == s.density()).all());
  TessellationModel other;
  other.seed = 2;
  CHECK(!(quasilocal_spectrum(other).density() == s.density()).all());

  const double peak = s.density().maxCoeff();
  const Eigen::ArrayXd& d = s.density();
  CHECK((d.tail(d.size() - 1) - d.head(d.size() - 1)).abs().maxCoeff() <= 0.2 * peak);
}

TEST_CASE("quasi-local spectrum has a white low-k plateau") {
  TessellationModel m;
  m.window = 6e-6;
  m.resolution = 480;
  const PatchSpectrum s = quasilocal_spectrum(m);
  const double k_cut = 0.2 * 2 * pi / m.l_max;
  std::vector<double> low;
  for (Eigen::Index i = 0; i < s.wavevectors().size(); ++i) {
    if (s.wavevectors()(i) > 0.0 && s.wavevectors()(i) < k_cut) low.push_back(s.density()(i));
  }
  REQUIRE(low.size() >= 3);
  double mean = 0.0;
  for (double v : low) mean += v / double(low.size());
  for (double v : low) CHECK(std::abs(v / mean - 1.0) <= 0.2);
}

TEST_CASE("patch pressure kernel against the finite-difference stress oracle") {
  const double L = 1e-6, v_a = 0.1;
  for (double kl : {0.1, 1.0, 5.0}) {
    const double k = kl / L;
    const double p = patch_pressure(L, band(k, v_a / std::sqrt(2.0)), PatchSpectrum::zero()).pressure;
    CHECK(p == doctest::Approx(oracle::fd_single_mode_pressure(k, L, v_a)).epsilon(1e-3));
  }
}

TEST_CASE("long-wavelength limit is the capacitor pressure") {
  const double L = 1e-6, va = 0.05, vb = 0.08, k0 = 1e-4 / L;
  const double p = patch_pressure(L, band(k0, va), band(k0, vb)).pressure;
  CHECK(p == doctest::Approx(-PhysicalConstants::epsilon_0 * (va * va + vb * vb) / (2 * L * L)).epsilon(1e-3));
}

TEST_CASE("zero spectra give zero pressure") {
  CHECK(patch_pressure(1e-7, PatchSpectrum::zero(), PatchSpectrum::zero()).pressure == 0.0);
}

TEST_CASE("quadratic voltage scaling is exact") {
  const auto s = grain_cutoff_spectrum(50e-9, 300e-9, 0.04);
  const auto s2 = grain_cutoff_spectrum(50e-9, 300e-9, 0.08);
  const double p = patch_pressure(2e-7, s, s).pressure;
  CHECK(patch_pressure(2e-7, s2, s2).pressure == doctest::Approx(4 * p).epsilon(1e-12));
  const PatchSpectrum& q = default_quasilocal();
  CHECK(patch_pressure(2e-7, q.scaled(4), q.scaled(4)).pressure ==
        doctest::Approx(4 * patch_pressure(2e-7, q, q).pressure).epsilon(1e-12));
}

TEST_CASE("uncorrelated pressure is attractive and its magnitude falls with L") {
  const Eigen::ArrayXd L = Eigen::ArrayXd::LinSpaced(15, std::log(0.1e-6), std::log(2e-6)).exp();
  for (const PatchSpectrum& s : {default_quasilocal(), grain_cutoff_spectrum(50e-9, 300e-9, 0.081)}) {
    const MeasurementSeries c = patch_pressure_curve(L, s, s);
    CHECK((c.value < 0.0).all());
    for (Eigen::Index i = 1; i < c.size(); ++i) CHECK(std::abs(c.value(i)) < std::abs(c.value(i - 1)));
  }
}

TEST_CASE("modes with kL > 20 contribute below 1e-8") {
  const PatchSpectrum& s = default_quasilocal();
  const double L = 160e-9;
  const double total = patch_pressure(L, s, s).pressure;
  const auto tail = integrate_adaptive(
      [&](double k) {
        const double e = std::exp(-k * L);
        return -(PhysicalConstants::epsilon_0 / (4 * pi)) * k * k * k * 2 * s(k) * 4 * e * e / std::pow(1 - e * e, 2);
      },
      20.0 / L, 200.0 / L, 1e-8);
  CHECK(std::abs(tail.value / total) < 1e-8);
}

TEST_CASE("quasi-local exceeds sharp-cutoff at 160 nm for grain-derived scales") {
  const PatchSpectrum& q = default_quasilocal();
  const auto s = grain_cutoff_spectrum(50e-9, 300e-9, 0.081);
  const double pq = patch_pressure(160e-9, q, q).pressure;
  const double ps = patch_pressure(160e-9, s, s).pressure;
  CHECK(std::abs(pq) >= 5 * std::abs(ps));
  CHECK(std::abs(ps) < 0.050);
}

TEST_CASE("cross spectrum enters with -2 cosh kL") {
  const double L = 1e-6, k0 = 1.0 / L;
  const auto a = band(k0, 0.05);
  const double p_uncorr = patch_pressure(L, a, a).pressure;
  const double p_corr = patch_pressure(L, a, a, a).pressure;
  // narrow band: the bracket is S (2 - 2 cosh k0 L) instead of 2 S
  CHECK(p_corr / p_uncorr == doctest::Approx(1.0 - std::cosh(1.0)).epsilon(1e-6));
}

TEST_CASE("curve of one point equals a single evaluation") {
  const auto s = grain_cutoff_spectrum(50e-9, 300e-9, 0.081);
  Eigen::ArrayXd L(1);
  L << 3e-7;
  CHECK(patch_pressure_curve(L, s, s).value(0) == patch_pressure(3e-7, s, s).pressure);
}

TEST_CASE("spectrum text round trip") {
  const PatchSpectrum& q = default_quasilocal();
  std::stringstream io;
  write_spectrum(io, q);
  const PatchSpectrum back = read_spectrum(io);
  CHECK(back.variance() == doctest::Approx(q.variance()).epsilon(1e-7));
  std::stringstream sharp_io;
  write_spectrum(sharp_io, grain_cutoff_spectrum(50e-9, 300e-9, 0.081));
  CHECK(read_spectrum(sharp_io).variance() == doctest::Approx(0.081 * 0.081).epsilon(1e-6));
  std::istringstream bad("1e6, x\n");
  CHECK_THROWS_AS(read_spectrum(bad), ConfigError);
}

TEST_CASE("invalid separation") {
  CHECK_THROWS_AS(patch_pressure(0.0, PatchSpectrum::zero(), PatchSpectrum::zero()), DomainError);
}
