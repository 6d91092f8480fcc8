#include "casimir/materials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

std::string to_string(MaterialModel model) {
  switch (model) {
    case MaterialModel::Perfect: return "perfect";
    case MaterialModel::Plasma: return "plasma";
    case MaterialModel::Drude: return "drude";
    case MaterialModel::Tabulated: return "tabulated";
  }
  return "unknown";
}

OpticalResponse OpticalResponse::perfect() { return OpticalResponse{}; }

OpticalResponse OpticalResponse::plasma(double plasma_frequency) {
  if (!(plasma_frequency > 0.0) || !std::isfinite(plasma_frequency)) {
    throw DomainError("plasma frequency must be positive and finite");
  }
  OpticalResponse r;
  r.model_ = MaterialModel::Plasma;
  r.plasma_frequency_ = plasma_frequency;
  return r;
}

OpticalResponse OpticalResponse::drude(double plasma_frequency, double damping_rate) {
  if (!(plasma_frequency > 0.0) || !std::isfinite(plasma_frequency)) {
    throw DomainError("plasma frequency must be positive and finite");
  }
  if (damping_rate < 0.0 || !std::isfinite(damping_rate)) {
    throw DomainError("damping rate must be non-negative and finite");
  }
  if (damping_rate == 0.0) {
    throw DomainError("Drude model with zero damping is the plasma model; use OpticalResponse::plasma");
  }
  OpticalResponse r;
  r.model_ = MaterialModel::Drude;
  r.plasma_frequency_ = plasma_frequency;
  r.damping_rate_ = damping_rate;
  return r;
}

OpticalResponse OpticalResponse::gold_drude() {
  return drude(ev_to_rad_per_s(9.0), ev_to_rad_per_s(0.035));
}

OpticalResponse OpticalResponse::gold_plasma() { return plasma(ev_to_rad_per_s(9.0)); }

OpticalResponse OpticalResponse::tabulated(std::vector<DielectricSample> samples, bool extrapolate) {
  if (samples.size() < 2) throw DomainError("tabulated response needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    if (!(s.xi > 0.0) || !std::isfinite(s.xi)) throw DomainError("tabulated xi must be positive");
    if (!(s.epsilon >= 1.0) || !std::isfinite(s.epsilon)) {
      throw DomainError("tabulated epsilon must be finite and >= 1");
    }
    if (i > 0 && !(s.xi > samples[i - 1].xi)) {
      throw DomainError("tabulated xi must be strictly increasing");
    }
  }

  OpticalResponse r;
  r.model_ = MaterialModel::Tabulated;
  r.extrapolate_ = extrapolate;
  r.samples_ = std::move(samples);

  const auto n = static_cast<Eigen::Index>(r.samples_.size());
  // log eps against log xi: metallic data are close to power laws there
  Eigen::ArrayXd log_xi(n), log_eps(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    log_xi(i) = std::log(r.samples_[i].xi);
    log_eps(i) = std::log(r.samples_[i].epsilon);
  }
  r.interpolant_ = MonotoneCubic(log_xi, log_eps);

  // Low tail: eps - 1 = A / (xi (xi + g)) through the two lowest samples.
  const double x1 = r.samples_[0].xi, x2 = r.samples_[1].xi;
  const double a1 = r.samples_[0].epsilon - 1.0, a2 = r.samples_[1].epsilon - 1.0;
  if (a1 == 0.0) {
    r.low_tail_ = LowFrequencyTail::Transparent;
  } else if (!(a1 * x1 > a2 * x2)) {
    // decays slower than 1/xi: not metallic, hold the lowest value
    r.low_tail_ = LowFrequencyTail::Dielectric;
    r.low_static_epsilon_ = r.samples_[0].epsilon;
  } else {
    const double g = (a2 * x2 * x2 - a1 * x1 * x1) / (a1 * x1 - a2 * x2);
    if (g > 0.0) {
      r.low_tail_ = LowFrequencyTail::Drude;
      r.low_damping_ = g;
      r.low_strength_ = a1 * x1 * (x1 + g);
    } else {
      r.low_tail_ = LowFrequencyTail::Plasma;
      r.low_damping_ = 0.0;
      r.low_strength_ = a1 * x1 * x1;
    }
  }
  // High tail continuous with the last sample.
  const auto& last = r.samples_.back();
  r.high_strength_ = (last.epsilon - 1.0) * last.xi * last.xi;
  return r;
}

std::string OpticalResponse::describe() const {
  std::ostringstream os;
  os.precision(9);
  switch (model_) {
    case MaterialModel::Perfect: os << "perfect"; break;
    case MaterialModel::Plasma:
      os << "plasma(wp=" << rad_per_s_to_ev(plasma_frequency_) << " eV)";
      break;
    case MaterialModel::Drude:
      os << "drude(wp=" << rad_per_s_to_ev(plasma_frequency_)
         << " eV, gamma=" << rad_per_s_to_ev(damping_rate_) << " eV)";
      break;
    case MaterialModel::Tabulated: os << "tabulated(" << samples_.size() << " samples)"; break;
  }
  return os.str();
}

double epsilon_at_imaginary(const OpticalResponse& response, double xi) {
  if (!(xi > 0.0) || std::isnan(xi)) throw DomainError("imaginary frequency must be positive");
  if (std::isinf(xi)) return response.model() == MaterialModel::Perfect
                                 ? std::numeric_limits<double>::infinity()
                                 : 1.0;
  switch (response.model()) {
    case MaterialModel::Perfect: return std::numeric_limits<double>::infinity();
    case MaterialModel::Plasma: {
      const double ratio = response.plasma_frequency() / xi;
      return 1.0 + ratio * ratio;
    }
    case MaterialModel::Drude: {
      const double wp = response.plasma_frequency();
      return 1.0 + wp * wp / (xi * (xi + response.damping_rate()));
    }
    case MaterialModel::Tabulated: break;
  }

  const auto samples = response.samples();
  if (xi < samples.front().xi) {
    if (!response.extrapolates()) throw RangeError("xi below tabulated range");
    switch (response.low_tail_) {
      case LowFrequencyTail::Transparent: return 1.0;
      case LowFrequencyTail::Dielectric: return response.low_static_epsilon_;
      case LowFrequencyTail::Drude:
      case LowFrequencyTail::Plasma:
        return 1.0 + response.low_strength_ / (xi * (xi + response.low_damping_));
    }
  }
  if (xi > samples.back().xi) {
    if (!response.extrapolates()) throw RangeError("xi above tabulated range");
    return 1.0 + response.high_strength_ / (xi * xi);
  }
  return std::max(1.0, std::exp(response.interpolant_(std::log(xi))));
}

double static_conductivity(const OpticalResponse& response) {
  if (response.model() != MaterialModel::Drude) {
    throw ModelError("static conductivity is finite only for the Drude model (" +
                     to_string(response.model()) + " given)");
  }
  const double wp = response.plasma_frequency();
  return wp * wp / response.damping_rate();
}

OpticalResponse read_tabulated(std::istream& in, bool extrapolate) {
  std::vector<DielectricSample> samples;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    DielectricSample s{};
    std::string extra;
    if (!(fields >> s.xi >> s.epsilon) || (fields >> extra)) {
      throw ConfigError("tabulated data line " + std::to_string(line_no) +
                        ": expected two numeric columns");
    }
    if (!samples.empty() && !(s.xi > samples.back().xi)) {
      throw ConfigError("tabulated data line " + std::to_string(line_no) +
                        ": xi must be strictly increasing");
    }
    samples.push_back(s);
  }
  try {
    return OpticalResponse::tabulated(std::move(samples), extrapolate);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("tabulated data: ") + e.what());
  }
}

OpticalResponse load_tabulated(const std::filesystem::path& path, bool extrapolate) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated data file " + path.string());
  return read_tabulated(in, extrapolate);
}

} // namespace casimir
