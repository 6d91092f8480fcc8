#include "casimir/patch.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

// ---------------------------------------------------------------- spectra

PatchSpectrum PatchSpectrum::sharp_cutoff(double k_min, double k_max, double v_rms) {
  if (!(k_min > 0.0) || !(k_max > k_min) || !std::isfinite(k_max)) {
    throw DomainError("sharp-cutoff spectrum needs 0 < k_min < k_max");
  }
  if (!(v_rms >= 0.0) || !std::isfinite(v_rms)) throw DomainError("V_rms must be >= 0");
  PatchSpectrum s;
  s.kind_ = SpectrumKind::SharpCutoff;
  s.k_min_ = k_min;
  s.k_max_ = k_max;
  s.level_ = 4.0 * pi * v_rms * v_rms / (k_max * k_max - k_min * k_min);
  return s;
}

PatchSpectrum PatchSpectrum::sampled(Eigen::ArrayXd k, Eigen::ArrayXd density,
                                     std::vector<std::string> provenance) {
  if (k.size() < 2 || density.size() != k.size()) {
    throw DomainError("sampled spectrum needs at least two (k, S) pairs");
  }
  if (!(k(0) >= 0.0)) throw DomainError("sampled spectrum wavevectors must be >= 0");
  for (Eigen::Index i = 0; i < k.size(); ++i) {
    if (i > 0 && !(k(i) > k(i - 1))) throw DomainError("sampled spectrum k must increase strictly");
    if (!(density(i) >= 0.0) || !std::isfinite(density(i))) {
      throw DomainError("spectral density must be finite and >= 0");
    }
  }
  PatchSpectrum s;
  s.kind_ = SpectrumKind::Sampled;
  s.k_ = std::move(k);
  s.s_ = std::move(density);
  s.k_min_ = s.k_(0);
  s.k_max_ = s.k_(s.k_.size() - 1);
  s.provenance_ = std::move(provenance);
  return s;
}

double PatchSpectrum::operator()(double k) const {
  if (kind_ == SpectrumKind::SharpCutoff) return (k >= k_min_ && k <= k_max_) ? level_ : 0.0;
  if (k < k_(0)) return s_(0);
  if (k > k_max_) return 0.0;
  const double* begin = k_.data();
  Eigen::Index i = std::upper_bound(begin, begin + k_.size(), k) - begin - 1;
  i = std::clamp<Eigen::Index>(i, 0, k_.size() - 2);
  const double t = (k - k_(i)) / (k_(i + 1) - k_(i));
  return (1.0 - t) * s_(i) + t * s_(i + 1);
}

double PatchSpectrum::variance() const {
  if (kind_ == SpectrumKind::SharpCutoff) {
    return level_ * (k_max_ * k_max_ - k_min_ * k_min_) / (4.0 * pi);
  }
  // int k S dk, exact for piecewise-linear S
  double sum = s_(0) * k_(0) * k_(0) / 2.0;
  for (Eigen::Index i = 0; i + 1 < k_.size(); ++i) {
    const double a = k_(i), b = k_(i + 1);
    sum += (b - a) * (s_(i) * (2.0 * a + b) + s_(i + 1) * (a + 2.0 * b)) / 6.0;
  }
  return sum / (2.0 * pi);
}

double PatchSpectrum::rms_voltage() const { return std::sqrt(variance()); }

PatchSpectrum PatchSpectrum::scaled(double factor) const {
  if (!(factor >= 0.0)) throw DomainError("spectrum scale factor must be >= 0");
  PatchSpectrum s = *this;
  s.level_ *= factor;
  s.s_ *= factor;
  return s;
}

bool PatchSpectrum::is_zero() const {
  return kind_ == SpectrumKind::SharpCutoff ? level_ == 0.0 : (s_ == 0.0).all();
}

std::vector<std::pair<double, double>> PatchSpectrum::smooth_pieces(double k_cut) const {
  std::vector<std::pair<double, double>> pieces;
  auto add = [&](double a, double b) {
    b = std::min(b, k_cut);
    if (b > a) pieces.emplace_back(a, b);
  };
  if (kind_ == SpectrumKind::SharpCutoff) {
    add(k_min_, k_max_);
  } else {
    add(0.0, k_(0));
    for (Eigen::Index i = 0; i + 1 < k_.size(); ++i) add(k_(i), k_(i + 1));
  }
  return pieces;
}

PatchSpectrum grain_cutoff_spectrum(double l_min, double l_max, double v_rms) {
  if (!(l_min > 0.0) || !(l_max > l_min)) throw DomainError("grain sizes need 0 < l_min < l_max");
  return PatchSpectrum::sharp_cutoff(2.0 * pi / l_max, 2.0 * pi / l_min, v_rms);
}

// ----------------------------------------------------------- tessellation

std::size_t TessellationModel::seed_count() const {
  const double ratio = window / mean_patch_size();
  return static_cast<std::size_t>(std::ceil(ratio * ratio));
}

void TessellationModel::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("tessellation model: " + what); };
  if (!(l_min > 0.0) || !std::isfinite(l_min)) fail("l_min must be positive");
  if (!(l_max >= l_min) || !std::isfinite(l_max)) fail("l_max must be >= l_min");
  if (!(window > 4.0 * l_max) || !std::isfinite(window)) fail("window must exceed 4 l_max");
  if (!(v_rms >= 0.0) || !std::isfinite(v_rms)) fail("V_rms must be >= 0");
  if (realizations < 1) fail("at least one realization is required");
  if (resolution < 16) fail("resolution must be at least 16 cells per side");
  if (cell_size() > l_min / 4.0 * (1.0 + 1e-12)) fail("grid cell must not exceed l_min / 4");
}

Tessellation draw_tessellation(const TessellationModel& model, std::uint64_t realization) {
  std::seed_seq seq{std::uint32_t(model.seed), std::uint32_t(model.seed >> 32),
                    std::uint32_t(realization), std::uint32_t(realization >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> position(0.0, model.window);
  std::normal_distribution<double> voltage(0.0, 1.0);

  const auto count = static_cast<Eigen::Index>(model.seed_count());
  Tessellation t;
  t.sites.resize(count, 2);
  t.voltages.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    t.sites(i, 0) = position(rng);
    t.sites(i, 1) = position(rng);
    t.voltages(i) = voltage(rng);
  }
  return t;
}

namespace {

// Nearest-site queries on the periodic window. Every bucket carries the
// list of site images that can be nearest to some point inside it.
class PeriodicNearestSite {
 public:
  PeriodicNearestSite(const Eigen::Matrix<double, Eigen::Dynamic, 2>& sites, double window)
      : window_(window) {
    const Eigen::Index count = sites.rows();
    buckets_ = std::max<Eigen::Index>(1, Eigen::Index(std::sqrt(double(count))));
    width_ = window / double(buckets_);

    // sites sorted into buckets (CSR)
    std::vector<std::size_t> start(buckets_ * buckets_ + 1, 0);
    for (Eigen::Index s = 0; s < count; ++s) ++start[bucket_index(sites(s, 0), sites(s, 1)) + 1];
    for (std::size_t b = 1; b < start.size(); ++b) start[b] += start[b - 1];
    std::vector<Candidate> sorted(count);
    {
      std::vector<std::size_t> fill(start.begin(), start.end() - 1);
      for (Eigen::Index s = 0; s < count; ++s) {
        sorted[fill[bucket_index(sites(s, 0), sites(s, 1))]++] = {sites(s, 0), sites(s, 1), s};
      }
    }

    // Visit every site of the buckets within `reach` of (bx, by), shifted to
    // the periodic image next to that bucket. Small grids fall back to the
    // nine images around the window.
    auto for_block = [&](Eigen::Index bx, Eigen::Index by, Eigen::Index reach, auto&& visit) {
      if (2 * reach + 1 > buckets_) {
        for (const Candidate& c : sorted) {
          for (int sx = -1; sx <= 1; ++sx) {
            for (int sy = -1; sy <= 1; ++sy) visit(c.x + sx * window_, c.y + sy * window_, c.site);
          }
        }
        return;
      }
      for (Eigen::Index dx = -reach; dx <= reach; ++dx) {
        Eigen::Index ix = bx + dx;
        double shift_x = 0.0;
        if (ix < 0) ix += buckets_, shift_x = -window_;
        if (ix >= buckets_) ix -= buckets_, shift_x = window_;
        for (Eigen::Index dy = -reach; dy <= reach; ++dy) {
          Eigen::Index iy = by + dy;
          double shift_y = 0.0;
          if (iy < 0) iy += buckets_, shift_y = -window_;
          if (iy >= buckets_) iy -= buckets_, shift_y = window_;
          const std::size_t b = std::size_t(ix * buckets_ + iy);
          for (std::size_t m = start[b]; m < start[b + 1]; ++m) {
            visit(sorted[m].x + shift_x, sorted[m].y + shift_y, sorted[m].site);
          }
        }
      }
    };

    const double half_diagonal = width_ * std::sqrt(0.5);
    offsets_.assign(buckets_ * buckets_ + 1, 0);
    candidates_.reserve(std::size_t(count) * 12);
    for (Eigen::Index bx = 0; bx < buckets_; ++bx) {
      for (Eigen::Index by = 0; by < buckets_; ++by) {
        const double cx = (double(bx) + 0.5) * width_;
        const double cy = (double(by) + 0.5) * width_;
        // nearest distance from the bucket centre; a block of `reach` is exact
        // for distances up to (reach + 1/2) widths
        double best2 = std::numeric_limits<double>::infinity();
        for (Eigen::Index reach = 1;; ++reach) {
          for_block(bx, by, reach, [&](double x, double y, Eigen::Index) {
            best2 = std::min(best2, (x - cx) * (x - cx) + (y - cy) * (y - cy));
          });
          const double exact = (double(reach) + 0.5) * width_;
          if (best2 <= exact * exact || 2 * reach + 1 > buckets_) break;
        }
        // any point of the bucket has its nearest site within this radius of the centre
        const double radius = std::sqrt(best2) + 2.0 * half_diagonal;
        const auto reach = static_cast<Eigen::Index>(std::ceil(radius / width_ - 0.5));
        const double radius2 = radius * radius;
        for_block(bx, by, reach, [&](double x, double y, Eigen::Index site) {
          if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius2) candidates_.push_back({x, y, site});
        });
        offsets_[bx * buckets_ + by + 1] = candidates_.size();
      }
    }
  }

  /// Index of the site nearest to (x, y), x and y inside the window; ties
  /// resolve to the lowest index.
  Eigen::Index operator()(double x, double y) const {
    const Eigen::Index b = bucket_index(x, y);
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index nearest = -1;
    for (std::size_t m = offsets_[b]; m < offsets_[b + 1]; ++m) {
      const Candidate& c = candidates_[m];
      const double d2 = (c.x - x) * (c.x - x) + (c.y - y) * (c.y - y);
      if (d2 < best || (d2 == best && c.site < nearest)) {
        best = d2;
        nearest = c.site;
      }
    }
    return nearest;
  }

 private:
  struct Candidate {
    double x, y;
    Eigen::Index site;
  };

  Eigen::Index bucket_index(double x, double y) const {
    const auto clampi = [this](double v) {
      return std::clamp<Eigen::Index>(Eigen::Index(v / width_), 0, buckets_ - 1);
    };
    return clampi(x) * buckets_ + clampi(y);
  }

  double window_;
  Eigen::Index buckets_ = 1;
  double width_ = 0.0;
  std::vector<std::size_t> offsets_;
  std::vector<Candidate> candidates_;
};

} // namespace

Eigen::MatrixXd rasterize(const Tessellation& tessellation, const TessellationModel& model) {
  const auto n = static_cast<Eigen::Index>(model.resolution);
  const double h = model.cell_size();
  const PeriodicNearestSite nearest(tessellation.sites, model.window);
  auto site_at = [&](Eigen::Index i, Eigen::Index j) {
    return nearest((double(i) + 0.5) * h, (double(j) + 0.5) * h);
  };

  Eigen::MatrixXd field(n, n);
  // Voronoi cells are convex: a block whose four corner pixels share a site
  // lies entirely inside that cell.
  auto fill_block = [&](auto&& self, Eigen::Index i0, Eigen::Index j0, Eigen::Index size_i,
                        Eigen::Index size_j) -> void {
    if (size_i <= 0 || size_j <= 0) return;
    const Eigen::Index i1 = i0 + size_i - 1, j1 = j0 + size_j - 1;
    const Eigen::Index s = site_at(i0, j0);
    if (size_i * size_j == 1) {
      field(i0, j0) = tessellation.voltages(s);
      return;
    }
    if (site_at(i1, j0) == s && site_at(i0, j1) == s && site_at(i1, j1) == s) {
      field.block(i0, j0, size_i, size_j).setConstant(tessellation.voltages(s));
      return;
    }
    const Eigen::Index hi = size_i / 2, hj = size_j / 2;
    if (size_i == 1) {
      self(self, i0, j0, 1, hj);
      self(self, i0, j0 + hj, 1, size_j - hj);
    } else if (size_j == 1) {
      self(self, i0, j0, hi, 1);
      self(self, i0 + hi, j0, size_i - hi, 1);
    } else {
      self(self, i0, j0, hi, hj);
      self(self, i0 + hi, j0, size_i - hi, hj);
      self(self, i0, j0 + hj, hi, size_j - hj);
      self(self, i0 + hi, j0 + hj, size_i - hi, size_j - hj);
    }
  };
  // tiles of about half a cell; below a few pixels per cell test every pixel
  const double cell_pixels = model.mean_patch_size() / h;
  Eigen::Index tile = 1;
  while (tile < 64 && double(2 * tile) <= 0.5 * cell_pixels) tile *= 2;
  if (tile < 4) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) field(i, j) = tessellation.voltages(site_at(i, j));
    }
    return field;
  }
  for (Eigen::Index i0 = 0; i0 < n; i0 += tile) {
    for (Eigen::Index j0 = 0; j0 < n; j0 += tile) {
      fill_block(fill_block, i0, j0, std::min(tile, n - i0), std::min(tile, n - j0));
    }
  }
  return field;
}

QuasiLocalEstimate estimate_quasilocal(const TessellationModel& model) {
  model.validate();
  const auto n = static_cast<Eigen::Index>(model.resolution);
  const Eigen::Index half = n / 2 + 1;
  // corner modes beyond the Nyquist circle are binned too; the radial
  // average there is still an unbiased estimate of the isotropic S(k)
  const Eigen::Index max_bin = n / 2;
  const double W = model.window;

  // bin index and multiplicity of every stored half-plane mode
  Eigen::ArrayXXi bin(half, n);
  Eigen::ArrayXXd multiplicity(half, n);
  Eigen::ArrayXd bin_modes = Eigen::ArrayXd::Zero(max_bin + 1);
  for (Eigen::Index mx = 0; mx < half; ++mx) {
    const bool self_conjugate = mx == 0 || (n % 2 == 0 && mx == n / 2);
    for (Eigen::Index my = 0; my < n; ++my) {
      const Eigen::Index sy = my <= n / 2 ? my : my - n;
      const auto j = static_cast<Eigen::Index>(std::lround(std::hypot(double(mx), double(sy))));
      bin(mx, my) = j <= max_bin ? int(j) : -1;
      multiplicity(mx, my) = self_conjugate ? 1.0 : 2.0;
      if (j <= max_bin) bin_modes(j) += multiplicity(mx, my);
    }
  }

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> row(n);
  std::vector<std::complex<double>> row_out, column(n), column_out;
  Eigen::MatrixXcd spectrum(half, n);

  Eigen::ArrayXd bin_power = Eigen::ArrayXd::Zero(max_bin + 1);
  double pixel_variance = 0.0;
  const double mode_scale = W * W / std::pow(double(n), 4);

  for (std::size_t r = 0; r < model.realizations; ++r) {
    const Eigen::MatrixXd field = rasterize(draw_tessellation(model, r), model);
    pixel_variance += field.squaredNorm() / double(n * n);
    // rows (index j) real -> half spectrum over the first axis
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) row[i] = field(i, j);
      fft.fwd(row_out, row);
      for (Eigen::Index mx = 0; mx < half; ++mx) spectrum(mx, j) = row_out[mx];
    }
    for (Eigen::Index mx = 0; mx < half; ++mx) {
      for (Eigen::Index j = 0; j < n; ++j) column[j] = spectrum(mx, j);
      fft.fwd(column_out, column);
      for (Eigen::Index my = 0; my < n; ++my) {
        const int j = bin(mx, my);
        if (j >= 0) bin_power(j) += multiplicity(mx, my) * std::norm(column_out[my]);
      }
    }
  }

  const double M = double(model.realizations);
  const double variance = model.v_rms * model.v_rms;
  const double dk = 2.0 * pi / W;
  const Eigen::ArrayXd binned = variance * mode_scale * bin_power / (bin_modes * M);

  // Bins up to half the Nyquist radius are kept. Above that the pixel field
  // is dominated by aliasing, so the spectrum continues with the k^-3 law of
  // a field with sharp patch boundaries, its amplitude taken from the bins
  // between a quarter and a half of the Nyquist radius.
  const Eigen::Index kept = max_bin / 2;
  const Eigen::Index fit_from = std::max<Eigen::Index>(1, max_bin / 4);
  double porod = 0.0;
  for (Eigen::Index j = fit_from; j <= kept; ++j) porod += binned(j) * std::pow(double(j) * dk, 3);
  porod /= double(kept - fit_from + 1);

  constexpr int tail_knots = 64; // eighth-octave steps up to 256 k_c
  Eigen::ArrayXd k(kept + tail_knots), density(kept + tail_knots);
  for (Eigen::Index j = 0; j < kept; ++j) {
    k(j) = double(j) * dk;
    density(j) = binned(j);
  }
  for (int m = 0; m < tail_knots; ++m) {
    k(kept + m) = double(kept) * dk * std::exp2(m / 8.0);
    density(kept + m) = porod / std::pow(k(kept + m), 3);
  }

  std::vector<std::string> provenance{
      "model = quasilocal",
      "l_min_m = " + format_exact(model.l_min),
      "l_max_m = " + format_exact(model.l_max),
      "v_rms_v = " + format_exact(model.v_rms),
      "window_m = " + format_exact(model.window),
      "resolution_cells = " + std::to_string(model.resolution),
      "realizations = " + std::to_string(model.realizations),
      "seed = " + std::to_string(model.seed),
      "tail = k^-3 above " + format_sci(double(kept) * dk) + " rad/m",
  };
  QuasiLocalEstimate estimate{PatchSpectrum::sampled(std::move(k), std::move(density), std::move(provenance)),
                              pixel_variance / M * variance, model.seed_count()};
  return estimate;
}

PatchSpectrum quasilocal_spectrum(const TessellationModel& model) {
  return estimate_quasilocal(model).spectrum;
}

// -------------------------------------------------------------- pressure

namespace {

// k^3 / sinh^2(kL) and k^3 cosh(kL) / sinh^2(kL) in overflow-free form
double direct_kernel(double k, double L) {
  if (k <= 0.0) return 0.0;
  const double x = k * L;
  const double e = std::exp(-2.0 * x);
  const double d = -std::expm1(-2.0 * x);
  return 4.0 * k * k * k * e / (d * d);
}

double cross_kernel(double k, double L) {
  if (k <= 0.0) return 0.0;
  const double x = k * L;
  const double d = -std::expm1(-2.0 * x);
  return 2.0 * k * k * k * std::exp(-x) * (1.0 + std::exp(-2.0 * x)) / (d * d);
}

constexpr double kMaxKL = 50.0;

double kernel_integral(const PatchSpectrum& spectrum, double L, bool cross) {
  if (spectrum.is_zero()) return 0.0;
  double total = 0.0;
  for (const auto& [a, b] : spectrum.smooth_pieces(kMaxKL / L)) {
    auto f = [&](double k) { return (cross ? cross_kernel(k, L) : direct_kernel(k, L)) * spectrum(k); };
    // Gauss-Kronrod nodes are interior, so steps at the piece ends are never sampled
    total += integrate_adaptive<double>(f, a, b, 1e-10, 0.0).value;
  }
  return total;
}

} // namespace

PatchPressureResult patch_pressure(double separation, const PatchSpectrum& spectrum_a,
                                   const PatchSpectrum& spectrum_b,
                                   const std::optional<PatchSpectrum>& cross) {
  if (!(separation > 0.0) || !std::isfinite(separation)) {
    throw DomainError("separation must be positive and finite");
  }
  const double L = separation;
  double integral = kernel_integral(spectrum_a, L, false) + kernel_integral(spectrum_b, L, false);
  if (cross) integral -= 2.0 * kernel_integral(*cross, L, true);

  PatchPressureResult result;
  const double prefactor = PhysicalConstants::epsilon_0 / (4.0 * pi);
  result.pressure = -prefactor * integral;
  if (std::isnan(result.pressure)) throw NumericalError("patch pressure evaluated to NaN");

  constexpr Eigen::Index samples = 64;
  result.k_samples = Eigen::ArrayXd::LinSpaced(samples, 0.0, 20.0 / L);
  result.integrand_samples.resize(samples);
  for (Eigen::Index i = 0; i < samples; ++i) {
    const double k = result.k_samples(i);
    double value = direct_kernel(k, L) * (spectrum_a(k) + spectrum_b(k));
    if (cross) value -= 2.0 * cross_kernel(k, L) * (*cross)(k);
    result.integrand_samples(i) = -prefactor * value;
  }
  return result;
}

MeasurementSeries patch_pressure_curve(const Eigen::ArrayXd& separations,
                                       const PatchSpectrum& spectrum_a,
                                       const PatchSpectrum& spectrum_b,
                                       const std::optional<PatchSpectrum>& cross) {
  MeasurementSeries series;
  series.separation = separations;
  series.value.resize(separations.size());
  series.sigma = Eigen::ArrayXd::Zero(separations.size());
  series.label = "patch pressure";
  for (Eigen::Index i = 0; i < separations.size(); ++i) {
    series.value(i) = patch_pressure(separations(i), spectrum_a, spectrum_b, cross).pressure;
  }
  return series;
}

// --------------------------------------------------------------------- IO

void write_spectrum(std::ostream& out, const PatchSpectrum& spectrum) {
  out << "# normalization: <V^2> = int d^2k/(2pi)^2 S(k) = int_0^inf k dk/(2pi) S(k)\n";
  out << "# variance_v2 = " << format_sci(spectrum.variance()) << '\n';
  for (const auto& line : spectrum.provenance()) out << "# " << line << '\n';
  out << "k_rad_per_m,S_V2_m2\n";
  if (spectrum.kind() == SpectrumKind::Sampled) {
    for (Eigen::Index i = 0; i < spectrum.wavevectors().size(); ++i) {
      out << format_exact(spectrum.wavevectors()(i)) << ',' << format_exact(spectrum.density()(i)) << '\n';
    }
    return;
  }
  // step function: duplicate knots at both cutoffs
  const double lo = spectrum.k_min(), hi = spectrum.k_max();
  const double nudge = 1e-6;
  for (const auto& [k, s] : std::vector<std::pair<double, double>>{
           {0.0, 0.0}, {lo * (1 - nudge), 0.0}, {lo, spectrum.level()}, {hi, spectrum.level()},
           {hi * (1 + nudge), 0.0}}) {
    out << format_exact(k) << ',' << format_exact(s) << '\n';
  }
}

PatchSpectrum read_spectrum(std::istream& in) {
  std::vector<double> k, s;
  std::vector<std::string> provenance;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      std::string body = line.substr(first + 1);
      body.erase(0, body.find_first_not_of(' '));
      if (body.rfind("normalization:", 0) != 0 && body.rfind("variance_v2", 0) != 0) {
        provenance.push_back(body);
      }
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(line[first]))) continue; // column names
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double a = 0, b = 0;
    if (!(fields >> a >> b)) {
      throw ConfigError("spectrum line " + std::to_string(line_no) + ": expected k, S");
    }
    k.push_back(a);
    s.push_back(b);
  }
  try {
    return PatchSpectrum::sampled(Eigen::Map<Eigen::ArrayXd>(k.data(), Eigen::Index(k.size())),
                                  Eigen::Map<Eigen::ArrayXd>(s.data(), Eigen::Index(s.size())),
                                  std::move(provenance));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("spectrum file: ") + e.what());
  }
}

} // namespace casimir
