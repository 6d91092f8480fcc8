#include "battery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/fit.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/patch.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace acceptance {

using namespace casimir;

namespace {

std::string sci(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", v);
  return buffer;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

constexpr double hbar = PhysicalConstants::hbar;
constexpr double c_light = PhysicalConstants::c;

CavityConfig gold(double L, double T, bool plasma) {
  CavityConfig cav;
  cav.separation = L;
  cav.temperature = T;
  cav.mirror_a = cav.mirror_b = plasma ? OpticalResponse::gold_plasma() : OpticalResponse::gold_drude();
  return cav;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Criterion timed(int id, std::string title, double budget, const std::function<Outcome()>& body) {
  Criterion c{id, std::move(title), false, {}, 0.0, budget};
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = body();
    c.pass = o.pass;
    c.detail = o.detail;
  } catch (const std::exception& e) {
    c.detail = std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.seconds > budget) {
    c.pass = false;
    c.detail += "; over runtime budget";
  }
  return c;
}

Outcome ideal_law() {
  double worst_p = 0.0, worst_f = 0.0;
  for (double L : {0.1e-6, 0.5e-6, 1e-6, 5e-6, 10e-6}) {
    CavityConfig cav;
    cav.separation = L;
    const PlaneResult r = evaluate_plane(cav);
    const double p = -pi * pi * hbar * c_light / (240.0 * std::pow(L, 4));
    const double f = -hbar * c_light * pi * pi / (720.0 * std::pow(L, 3));
    worst_p = std::max(worst_p, rel(r.pressure, p));
    worst_f = std::max(worst_f, rel(r.free_energy_per_area, f));
  }
  return {worst_p <= 1e-6 && worst_f <= 1e-6,
          "max rel err P " + sci(worst_p) + ", F/A " + sci(worst_f) + " (tol 1e-6)"};
}

Outcome toy_1d() {
  const double L = 1e-6;
  const double e = casimir_1d_energy(L, 1.0, 1.0);
  const double o = oracle::mode_sum_1d_energy(L);
  const double err = rel(e, o);
  return {err <= 1e-6, "E = " + sci(e) + " J vs mode sum " + sci(o) + ", rel err " + sci(err) + " (tol 1e-6)"};
}

Outcome factor_two() {
  const double ratio = pressure(gold(50e-6, 300.0, true)) / pressure(gold(50e-6, 300.0, false));
  return {ratio >= 1.85 && ratio <= 2.0, "P_plasma/P_drude = " + sci(ratio) + " (want [1.85, 2.0])"};
}

Outcome classical_limit() {
  const double L = 50e-6, T = 300.0;
  const double zeta3 = 0.5 * oracle::two_zeta3_trapezoid();
  const double limit = -zeta3 * PhysicalConstants::k_B * T / (8.0 * pi * L * L * L);
  const double p = pressure(gold(L, T, false));
  const double err = rel(p, limit);
  return {err <= 0.02, "P = " + sci(p) + " Pa vs " + sci(limit) + " Pa, rel " + sci(err) + " (tol 2e-2)"};
}

Outcome magnitude_anchor() {
  const double p = std::abs(pressure(gold(160e-9, 300.0, false)));
  return {p >= 0.75 && p <= 1.3, "|P_drude(160 nm)| = " + sci(p) + " Pa (want [0.75, 1.3])"};
}

Outcome difference_anchor() {
  const double d = std::abs(pressure_difference(gold(160e-9, 300.0, false), OpticalResponse::gold_plasma()));
  return {d >= 0.020 && d <= 0.100, "|P_plasma - P_drude| = " + sci(d * 1e3) + " mPa (want [20, 100])"};
}

// Narrow isotropic band around k0 carrying the variance of V_a cos(k0 x).
PatchSpectrum single_mode(double k0, double v_rms) {
  return PatchSpectrum::sharp_cutoff(k0 * (1.0 - 1e-5), k0 * (1.0 + 1e-5), v_rms);
}

Outcome patch_kernel() {
  const double L = 1e-6, v_a = 0.1;
  double worst = 0.0;
  for (double kl : {0.1, 1.0, 5.0}) {
    const double k = kl / L;
    const double fd = oracle::fd_single_mode_pressure(k, L, v_a);
    const PatchSpectrum s = single_mode(k, v_a / std::sqrt(2.0));
    const double p = patch_pressure(L, s, PatchSpectrum::zero()).pressure;
    worst = std::max(worst, rel(p, fd));
  }
  const double va = 0.05, vb = 0.08, k0 = 1e-4 / L;
  const double p0 = patch_pressure(L, single_mode(k0, va), single_mode(k0, vb)).pressure;
  const double cap = -PhysicalConstants::epsilon_0 * (va * va + vb * vb) / (2.0 * L * L);
  const double err0 = rel(p0, cap);
  return {worst <= 1e-3 && err0 <= 1e-3,
          "max rel err vs finite-difference stress " + sci(worst) + ", long-wavelength limit " + sci(err0) +
              " (tol 1e-3)"};
}

Outcome normalization(std::uint64_t seed) {
  const double v = 0.081;
  const PatchSpectrum sharp = grain_cutoff_spectrum(50e-9, 300e-9, v);
  const double err_sharp = rel(sharp.variance(), v * v);
  TessellationModel m;
  m.seed = seed;
  const double err_ql = rel(quasilocal_spectrum(m).variance(), v * v);
  return {err_sharp <= 1e-12 && err_ql <= 0.02,
          "sharp rel err " + sci(err_sharp) + ", quasi-local (M = 200) " + sci(err_ql) + " (tol 2e-2)"};
}

Outcome model_contrast(std::uint64_t seed) {
  TessellationModel m; // 81 mV, l_min 50 nm, l_max 300 nm
  m.seed = seed;
  const PatchSpectrum ql = quasilocal_spectrum(m);
  const PatchSpectrum sharp = grain_cutoff_spectrum(m.l_min, m.l_max, m.v_rms);
  const double p_ql = std::abs(patch_pressure(160e-9, ql, ql).pressure);
  const double p_sharp = std::abs(patch_pressure(160e-9, sharp, sharp).pressure);
  return {p_ql >= 5.0 * p_sharp, "|P| quasi-local " + sci(p_ql * 1e3) + " mPa, sharp " + sci(p_sharp * 1e3) +
                                     " mPa, ratio " + sci(p_ql / p_sharp) + " (want >= 5)"};
}

Outcome fit_round_trip(std::uint64_t seed) {
  const TessellationModel model = fixture::fit_model();
  const MeasurementSeries data =
      fixture::synthetic_residuals(model, fixture::kTrueLmax, fixture::kTrueVrms, fixture::residual_separations(),
                                   seed + 1000, seed);
  const FitResult a = fit_patch_parameters(data, model, fixture::fit_bounds(), seed);
  const FitResult b = fit_patch_parameters(data, model, fixture::fit_bounds(), seed);
  const double el = rel(a.l_max, fixture::kTrueLmax);
  const double ev = rel(a.v_rms, fixture::kTrueVrms);
  const bool same = format_fit_report(a) == format_fit_report(b) && (a.fitted == b.fitted).all();
  return {el <= 0.1 && ev <= 0.1 && same,
          "l_max " + sci(a.l_max) + " m (rel " + sci(el) + "), V_rms " + sci(a.v_rms) + " V (rel " + sci(ev) +
              "), repeat " + (same ? "identical" : "DIFFERS") + " (tol 1e-1)"};
}

Outcome invariants(std::uint64_t seed) {
  std::vector<std::string> failures;
  const Eigen::ArrayXd grid = fixture::residual_separations();
  // lifshitz-core: attraction, monotone magnitude, perfect > plasma > drude
  Eigen::ArrayXd prev = Eigen::ArrayXd::Constant(3, std::numeric_limits<double>::infinity());
  for (double L : grid) {
    CavityConfig perfect;
    perfect.separation = L;
    perfect.temperature = 300.0;
    const Eigen::Array3d p(pressure(perfect), pressure(gold(L, 300.0, true)), pressure(gold(L, 300.0, false)));
    if (!(p < 0.0).all()) failures.push_back("non-attractive Lifshitz pressure");
    if (!(p.abs() < prev).all()) failures.push_back("Lifshitz |P| not decreasing");
    if (!(std::abs(p(0)) > std::abs(p(1)) && std::abs(p(1)) > std::abs(p(2)))) {
      failures.push_back("model ordering perfect > plasma > drude broken");
    }
    prev = p.abs();
  }
  // patch-electrostatics: attraction and monotone magnitude for both families
  TessellationModel m;
  m.seed = seed;
  const PatchSpectrum ql = quasilocal_spectrum(m);
  const PatchSpectrum sharp = grain_cutoff_spectrum(m.l_min, m.l_max, m.v_rms);
  for (const PatchSpectrum* s : {&ql, &sharp}) {
    const MeasurementSeries curve = patch_pressure_curve(grid, *s, *s);
    if (!(curve.value < 0.0).all()) failures.push_back("non-attractive patch pressure");
    for (Eigen::Index i = 1; i < curve.size(); ++i) {
      if (!(std::abs(curve.value(i)) < std::abs(curve.value(i - 1)))) {
        failures.push_back("patch |P| not decreasing");
        break;
      }
    }
  }
  // P = -d(F/A)/dL
  double worst = 0.0;
  for (double L : {0.2e-6, 1e-6, 5e-6}) {
    const auto energy = [](double x) { return free_energy_per_area(gold(x, 300.0, false)); };
    const double p = pressure(gold(L, 300.0, false));
    worst = std::max(worst, rel(-oracle::central_derivative(energy, L, 1e-3 * L), p));
  }
  if (worst > 1e-4) failures.push_back("finite-difference pressure mismatch");
  std::string detail = failures.empty() ? "sign, monotonicity and ordering hold" : failures.front();
  detail += "; max rel err -d(F/A)/dL vs P " + sci(worst) + " (tol 1e-4)";
  return {failures.empty(), detail};
}

} // namespace

std::vector<Criterion> run_core(std::uint64_t seed) {
  std::vector<Criterion> out;
  out.push_back(timed(1, "ideal law", 1.0, ideal_law));
  out.push_back(timed(2, "1-D toy vs mode sum", 1.0, toy_1d));
  out.push_back(timed(3, "factor 2 at 50 um", 5.0, factor_two));
  out.push_back(timed(4, "classical Drude limit", 5.0, classical_limit));
  out.push_back(timed(5, "magnitude anchor at 160 nm", 5.0, magnitude_anchor));
  out.push_back(timed(6, "plasma-Drude difference at 160 nm", 5.0, difference_anchor));
  out.push_back(timed(7, "patch kernel oracle", 30.0, patch_kernel));
  out.push_back(timed(8, "spectrum normalization", 60.0, [seed] { return normalization(seed); }));
  out.push_back(timed(9, "quasi-local vs sharp-cutoff contrast", 60.0, [seed] { return model_contrast(seed); }));
  out.push_back(timed(10, "fit round-trip", 300.0, [seed] { return fit_round_trip(seed); }));
  out.push_back(timed(11, "invariant suites", 120.0, [seed] { return invariants(seed); }));
  return out;
}

std::vector<Criterion> run_battery(std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<Criterion> first = run_core(seed);
  const std::vector<Criterion> second = run_core(seed);
  const bool same = render(first) == render(second);
  Criterion c{12, "reproducibility", same,
              same ? "two runs with the same seed render byte-identical" : "repeated run differs", 0.0, 600.0};
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.seconds > c.budget_seconds) {
    c.pass = false;
    c.detail += "; over runtime budget";
  }
  first.push_back(c);
  return first;
}

std::string render(const Criterion& c) {
  char head[64];
  std::snprintf(head, sizeof head, "criterion %2d %s  ", c.id, c.pass ? "PASS" : "FAIL");
  return head + c.title + ": " + c.detail;
}

std::string render(const std::vector<Criterion>& all) {
  std::ostringstream out;
  for (const Criterion& c : all) out << render(c) << '\n';
  return out.str();
}

} // namespace acceptance
