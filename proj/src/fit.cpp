#include "casimir/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir {

void FitBounds::validate() const {
  auto check = [](double lower, double upper, const char* name) {
    if (!(lower > 0.0) || !(upper > lower) || !std::isfinite(upper)) {
      throw ConfigError(std::string("fit bounds: need 0 < ") + name + " lower < upper");
    }
  };
  check(l_max_lower, l_max_upper, "l_max");
  check(v_rms_lower, v_rms_upper, "V_rms");
}

namespace {

Eigen::ArrayXd log_spaced(double lower, double upper, std::size_t count) {
  if (count == 1) return Eigen::ArrayXd::Constant(1, lower);
  Eigen::ArrayXd out = Eigen::ArrayXd::LinSpaced(Eigen::Index(count), std::log(lower), std::log(upper)).exp();
  out(0) = lower;
  out(out.size() - 1) = upper;
  return out;
}

TessellationModel node_model(const TessellationModel& fixed, double l_max) {
  TessellationModel model = fixed;
  model.l_max = l_max;
  model.v_rms = 1.0;
  return model;
}

} // namespace

PatchCurveCache::PatchCurveCache(const Eigen::ArrayXd& separations, const TessellationModel& fixed,
                                 const FitBounds& bounds, std::size_t nodes) {
  if (nodes == 0) throw ConfigError("fit: need at least one l_max node");
  nodes_ = log_spaced(bounds.l_max_lower, bounds.l_max_upper, nodes);
  // every node must be a valid tessellation before any work is done
  for (double l : nodes_) node_model(fixed, l).validate();

  unit_.resize(separations.size(), nodes_.size());
  for (Eigen::Index j = 0; j < nodes_.size(); ++j) {
    const PatchSpectrum spectrum = quasilocal_spectrum(node_model(fixed, nodes_(j)));
    unit_.col(j) = patch_pressure_curve(separations, spectrum, spectrum).value.matrix();
  }
  if (!(unit_.array() < 0.0).all()) {
    throw NumericalError("fit: unit patch pressure is not strictly attractive");
  }
  if (nodes_.size() > 1) {
    const Eigen::ArrayXd log_nodes = nodes_.log();
    for (Eigen::Index i = 0; i < separations.size(); ++i) {
      log_curves_.emplace_back(log_nodes, (-unit_.row(i).array()).log().transpose().eval());
    }
  }
}

Eigen::ArrayXd PatchCurveCache::curve(double l_max) const {
  if (log_curves_.empty()) return unit_.col(0).array();
  const double x = std::log(l_max);
  Eigen::ArrayXd out(unit_.rows());
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = -std::exp(log_curves_[std::size_t(i)](x));
  return out;
}

namespace {

struct Vertex {
  Eigen::Vector2d x; // (log l_max, log V_rms)
  double f = 0.0;
};

std::string trace_line(std::size_t iteration, const Vertex& v) {
  std::ostringstream line;
  line << "iteration " << iteration << ": l_max=" << format_sci(std::exp(v.x(0)))
       << " V_rms=" << format_sci(std::exp(v.x(1))) << " chi2=" << format_sci(v.f);
  return line.str();
}

} // namespace

FitResult fit_patch_parameters(const MeasurementSeries& residual, const TessellationModel& fixed,
                               const FitBounds& bounds, std::uint64_t seed,
                               const FitOptions& options) {
  residual.validate_for_weighting();
  if (residual.size() < 4) throw DomainError("fit: need at least 4 residual points");
  bounds.validate();
  if (options.grid_points < 2) throw ConfigError("fit: grid needs at least 2 points per axis");

  TessellationModel model = fixed;
  model.seed = seed;

  FitResult result;
  result.points = std::size_t(residual.size());
  const Eigen::ArrayXd weight = residual.sigma.inverse();

  // no signal: the smallest voltage is the answer, l_max is unconstrained
  if ((residual.value == 0.0).all()) {
    const PatchCurveCache cache(residual.separation, model, {bounds.l_max_lower, bounds.l_max_upper,
                                                             bounds.v_rms_lower, bounds.v_rms_upper},
                                1);
    const double v2 = bounds.v_rms_lower * bounds.v_rms_lower;
    result.l_max = bounds.l_max_lower;
    result.v_rms = bounds.v_rms_lower;
    result.chi_squared = (cache.curve(result.l_max) * v2 * weight).square().sum();
    result.l_max_half_width = std::numeric_limits<double>::quiet_NaN();
    result.v_rms_half_width = std::numeric_limits<double>::quiet_NaN();
    result.converged = true;
    result.flat_chi_squared = true;
    result.at_bound = true;
    result.grid_best_l_max = result.l_max;
    result.grid_best_v_rms = result.v_rms;
    result.grid_best_chi_squared = result.chi_squared;
    result.fitted = cache.curve(result.l_max) * v2;
    result.diagnostics.push_back("all residuals are zero; chi^2 is flat in l_max");
    return result;
  }

  bool magnitude = false;
  switch (options.sign) {
    case ResidualSign::Signed: break;
    case ResidualSign::Magnitude: magnitude = true; break;
    case ResidualSign::Auto: magnitude = (residual.value * weight.square()).sum() > 0.0; break;
  }
  result.magnitude_residuals = magnitude;
  const double orientation = magnitude ? -1.0 : 1.0;

  const PatchCurveCache cache(residual.separation, model, bounds, options.grid_points);
  auto chi2_linear = [&](double l_max, double v_rms) {
    const Eigen::ArrayXd theory = orientation * v_rms * v_rms * cache.curve(l_max);
    return ((residual.value - theory) * weight).square().sum();
  };

  const Eigen::Vector2d lower(std::log(bounds.l_max_lower), std::log(bounds.v_rms_lower));
  const Eigen::Vector2d upper(std::log(bounds.l_max_upper), std::log(bounds.v_rms_upper));
  auto clamp = [&](Eigen::Vector2d x) { return x.cwiseMax(lower).cwiseMin(upper).eval(); };
  auto evaluate = [&](const Eigen::Vector2d& x) { return Vertex{x, chi2_linear(std::exp(x(0)), std::exp(x(1)))}; };

  // stage 1: grid over the cached nodes
  const Eigen::ArrayXd v_grid = log_spaced(bounds.v_rms_lower, bounds.v_rms_upper, options.grid_points);
  Vertex best{Eigen::Vector2d::Zero(), std::numeric_limits<double>::infinity()};
  Eigen::Index best_i = 0, best_j = 0;
  for (Eigen::Index i = 0; i < cache.nodes().size(); ++i) {
    const Eigen::ArrayXd curve = orientation * cache.unit_pressure().col(i).array();
    for (Eigen::Index j = 0; j < v_grid.size(); ++j) {
      const double f = ((residual.value - v_grid(j) * v_grid(j) * curve) * weight).square().sum();
      if (f < best.f) {
        best = {Eigen::Vector2d(std::log(cache.nodes()(i)), std::log(v_grid(j))), f};
        best_i = i;
        best_j = j;
      }
    }
  }
  result.grid_best_l_max = cache.nodes()(best_i);
  result.grid_best_v_rms = v_grid(best_j);
  result.grid_best_chi_squared = best.f;

  // stage 2: simplex in (log l_max, log V_rms), started one grid step inward
  const Eigen::Vector2d step((upper - lower) / double(options.grid_points - 1));
  std::array<Vertex, 3> simplex;
  simplex[0] = best;
  for (int d = 0; d < 2; ++d) {
    Eigen::Vector2d x = best.x;
    const double inward = (x(d) + step(d) <= upper(d)) ? step(d) : -step(d);
    x(d) += inward;
    simplex[std::size_t(d) + 1] = evaluate(clamp(x));
  }

  const double absolute_floor = 1e-12 * double(residual.size());
  std::vector<std::string> trace;
  std::size_t iteration = 0;
  bool converged = false;
  for (;; ++iteration) {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    trace.push_back(trace_line(iteration, simplex[0]));
    const double spread = simplex[2].f - simplex[0].f;
    const double diameter = std::max((simplex[1].x - simplex[0].x).norm(), (simplex[2].x - simplex[0].x).norm());
    if (spread <= options.rel_tol * std::abs(simplex[0].f) + absolute_floor || diameter < 1e-12) {
      converged = true;
      break;
    }
    if (iteration >= options.max_iterations) break;

    const Eigen::Vector2d centroid = 0.5 * (simplex[0].x + simplex[1].x);
    const Vertex reflected = evaluate(clamp(centroid + (centroid - simplex[2].x)));
    if (reflected.f < simplex[0].f) {
      const Vertex expanded = evaluate(clamp(centroid + 2.0 * (centroid - simplex[2].x)));
      simplex[2] = expanded.f < reflected.f ? expanded : reflected;
      continue;
    }
    if (reflected.f < simplex[1].f) {
      simplex[2] = reflected;
      continue;
    }
    const bool outside = reflected.f < simplex[2].f;
    const Vertex contracted = outside ? evaluate(clamp(centroid + 0.5 * (reflected.x - centroid)))
                                      : evaluate(clamp(centroid + 0.5 * (simplex[2].x - centroid)));
    if (contracted.f < std::min(reflected.f, simplex[2].f)) {
      simplex[2] = contracted;
      continue;
    }
    for (std::size_t k = 1; k < 3; ++k) simplex[k] = evaluate(simplex[0].x + 0.5 * (simplex[k].x - simplex[0].x));
  }

  if (!converged) {
    std::ostringstream joined;
    const std::size_t first = trace.size() > 20 ? trace.size() - 20 : 0;
    for (std::size_t k = first; k < trace.size(); ++k) joined << trace[k] << '\n';
    throw FitError("fit: simplex did not converge in " + std::to_string(options.max_iterations) +
                       " iterations",
                   joined.str());
  }

  result.l_max = std::exp(simplex[0].x(0));
  result.v_rms = std::exp(simplex[0].x(1));
  result.chi_squared = simplex[0].f;
  result.iterations = iteration;
  result.converged = true;
  result.fitted = orientation * result.v_rms * result.v_rms * cache.curve(result.l_max);
  const double edge = 1e-6;
  result.at_bound = ((simplex[0].x - lower).array().abs() < edge).any() ||
                    ((simplex[0].x - upper).array().abs() < edge).any();
  if (result.at_bound) result.diagnostics.push_back("minimizer on a search bound");

  // local quadratic approximation: cov = 2 H^-1 of chi^2 in (l_max, V_rms)
  const double hl = 1e-3 * result.l_max, hv = 1e-3 * result.v_rms;
  const double l0 = std::clamp(result.l_max, bounds.l_max_lower + hl, bounds.l_max_upper - hl);
  const double v0 = std::clamp(result.v_rms, bounds.v_rms_lower + hv, bounds.v_rms_upper - hv);
  auto f = [&](int a, int b) { return chi2_linear(l0 + a * hl, v0 + b * hv); };
  const double f00 = f(0, 0);
  Eigen::Matrix2d hessian;
  hessian(0, 0) = (f(1, 0) - 2.0 * f00 + f(-1, 0)) / (hl * hl);
  hessian(1, 1) = (f(0, 1) - 2.0 * f00 + f(0, -1)) / (hv * hv);
  hessian(0, 1) = hessian(1, 0) = (f(1, 1) - f(1, -1) - f(-1, 1) + f(-1, -1)) / (4.0 * hl * hv);
  const Eigen::LLT<Eigen::Matrix2d> llt(hessian);
  if (llt.info() == Eigen::Success) {
    const Eigen::Matrix2d covariance = 2.0 * llt.solve(Eigen::Matrix2d::Identity());
    result.l_max_half_width = std::sqrt(covariance(0, 0));
    result.v_rms_half_width = std::sqrt(covariance(1, 1));
  } else {
    result.l_max_half_width = std::numeric_limits<double>::quiet_NaN();
    result.v_rms_half_width = std::numeric_limits<double>::quiet_NaN();
    result.diagnostics.push_back("chi^2 Hessian not positive definite; no confidence intervals");
  }
  return result;
}

std::string format_fit_report(const FitResult& r) {
  std::ostringstream out;
  auto flag = [](bool b) { return b ? "true" : "false"; };
  out << "l_max_m = " << format_sci(r.l_max) << '\n'
      << "v_rms_V = " << format_sci(r.v_rms) << '\n'
      << "chi_squared = " << format_sci(r.chi_squared) << '\n'
      << "l_max_half_width_m = " << format_sci(r.l_max_half_width) << '\n'
      << "v_rms_half_width_V = " << format_sci(r.v_rms_half_width) << '\n'
      << "points = " << r.points << '\n'
      << "iterations = " << r.iterations << '\n'
      << "converged = " << flag(r.converged) << '\n'
      << "flat_chi_squared = " << flag(r.flat_chi_squared) << '\n'
      << "at_bound = " << flag(r.at_bound) << '\n'
      << "magnitude_residuals = " << flag(r.magnitude_residuals) << '\n'
      << "grid_best_l_max_m = " << format_sci(r.grid_best_l_max) << '\n'
      << "grid_best_v_rms_V = " << format_sci(r.grid_best_v_rms) << '\n'
      << "grid_best_chi_squared = " << format_sci(r.grid_best_chi_squared) << '\n';
  for (const std::string& d : r.diagnostics) out << "diagnostic = " << d << '\n';
  return out.str();
}

} // namespace casimir
