#include "kerr2jc/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

namespace {
constexpr double kMinPhotonNumber = 1e-14;

double falling_factorial(int q, int n) {
  double f = 1.0;
  for (int k = 0; k < n; ++k) f *= std::max(0, q - k);
  return f;
}

double require_photons(const std::vector<double>& p, const char* what) {
  double n_s = 0.0;
  for (std::size_t q = 0; q < p.size(); ++q) n_s += static_cast<double>(q) * p[q];
  if (!(n_s > kMinPhotonNumber)) {
    throw UndefinedCorrelatorError(std::string(what) + ": steady-state photon number vanishes");
  }
  return n_s;
}
}  // namespace

std::vector<double> photon_distribution(const DensityMatrix& rho) {
  const HilbertSpace& s = rho.space();
  std::vector<double> p(static_cast<std::size_t>(s.fock_dim()));
  for (int q = 0; q <= s.n_max(); ++q) {
    const int ig = s.index(Level::Ground, q);
    const int im = s.index(Level::Metastable, q);
    p[static_cast<std::size_t>(q)] = rho.matrix()(ig, ig).real() + rho.matrix()(im, im).real();
  }
  return p;
}

double mean_photon_number(const DensityMatrix& rho) {
  const std::vector<double> p = photon_distribution(rho);
  double n_s = 0.0;
  for (std::size_t q = 0; q < p.size(); ++q) n_s += static_cast<double>(q) * p[q];
  return n_s;
}

double equal_time_correlator(const DensityMatrix& rho, int n) {
  if (n < 2) throw DomainError("equal_time_correlator: order must be >= 2");
  const std::vector<double> p = photon_distribution(rho);
  const double n_s = require_photons(p, "equal_time_correlator");
  double moment = 0.0;
  for (std::size_t q = 0; q < p.size(); ++q) moment += falling_factorial(static_cast<int>(q), n) * p[q];
  return moment / std::pow(n_s, n);
}

std::vector<double> photon_amplitude(const DensityMatrix& rho) {
  const std::vector<double> p = photon_distribution(rho);
  const double n_s = require_photons(p, "photon_amplitude");
  std::vector<double> amp(p.size());
  for (std::size_t q = 0; q < p.size(); ++q) {
    amp[q] = std::sqrt(std::max(0.0, static_cast<double>(q) * p[q] / n_s));
  }
  return amp;
}

PhotonStatistics photon_statistics(const DensityMatrix& rho) {
  PhotonStatistics s;
  s.p = photon_distribution(rho);
  s.n_s = mean_photon_number(rho);
  s.g2 = equal_time_correlator(rho, 2);
  s.g3 = equal_time_correlator(rho, 3);
  s.g4 = equal_time_correlator(rho, 4);
  s.p_amp = photon_amplitude(rho);
  return s;
}

const char* to_string(RegimeKind kind) noexcept {
  switch (kind) {
    case RegimeKind::SinglePB: return "SinglePB";
    case RegimeKind::MultiPB: return "MultiPB";
    case RegimeKind::PIT: return "PIT";
    case RegimeKind::Bundles: return "Bundles";
    case RegimeKind::Unclassified: return "Unclassified";
  }
  return "Unclassified";
}

std::string RegimeLabel::name() const {
  std::string out = to_string(kind);
  if (kind == RegimeKind::MultiPB || kind == RegimeKind::Bundles) out += "(" + std::to_string(order) + ")";
  return out;
}

std::optional<double> first_local_extremum(const CorrelationSeries& series) {
  const auto& v = series.values;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const bool max = v[i] > v[i - 1] && v[i] >= v[i + 1];
    const bool min = v[i] < v[i - 1] && v[i] <= v[i + 1];
    if (max || min) return series.times[i];
  }
  return std::nullopt;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

enum class Side { Above, Below, Band };

Side side(double g, double band) {
  if (g > 1.0 + band) return Side::Above;
  if (g < 1.0 - band) return Side::Below;
  return Side::Band;
}

Evidence compare_to_one(const std::string& name, double g, bool expect_above, double band) {
  Evidence e;
  e.condition = name + (expect_above ? " > 1" : " < 1") + " (" + name + " = " + fmt(g) + ")";
  e.margin = expect_above ? g - 1.0 : 1.0 - g;
  e.holds = e.margin > band;
  return e;
}

// min over tau in (0, window] of sign * (g(tau) - g(0)); nullopt if the window has no samples.
std::optional<double> min_delayed_margin(const CorrelationSeries& s, double window, double sign) {
  if (s.values.empty()) return std::nullopt;
  const double g0 = s.values.front();
  std::optional<double> out;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    if (!(s.times[i] > 0.0) || s.times[i] > window) continue;
    const double m = sign * (s.values[i] - g0);
    out = out ? std::min(*out, m) : m;
  }
  return out;
}

void add_extremum(const CorrelationSeries& s, const std::string& name, std::vector<Evidence>& ev) {
  if (auto t = first_local_extremum(s)) {
    ev.push_back({"first local extremum of " + name + " at tau = " + fmt(*t), *t, true});
  }
}

}  // namespace

RegimeLabel classify(const PhotonStatistics& stats, const CorrelationSeries* g1_series,
                     const CorrelationSeries* group_series, const ClassifyOptions& options) {
  const double band = options.guard_band;
  RegimeLabel label;
  auto& ev = label.evidence;

  const Side s2 = side(stats.g2, band);
  if (s2 == Side::Band) {
    ev.push_back({"g1^(2)(0) within guard band of 1 (g1^(2)(0) = " + fmt(stats.g2) + ")",
                  std::abs(stats.g2 - 1.0), false});
    return label;
  }

  if (s2 == Side::Below) {
    ev.push_back(compare_to_one("g1^(2)(0)", stats.g2, false, band));
    const auto margin = g1_series ? min_delayed_margin(*g1_series, options.tau_window, 1.0) : std::nullopt;
    if (!margin) {
      ev.push_back({"g1^(2)(0) < g1^(2)(tau) not checked (no delayed series)", 0.0, false});
      label.kind = RegimeKind::SinglePB;
      return label;
    }
    const bool ok = *margin > 0.0;
    ev.push_back({"g1^(2)(0) < g1^(2)(tau) for tau in (0, " + fmt(options.tau_window) + "]", *margin, ok});
    add_extremum(*g1_series, "g1^(2)(tau)", ev);
    label.kind = ok ? RegimeKind::SinglePB : RegimeKind::Unclassified;
    return label;
  }

  // g2 > 1
  ev.push_back(compare_to_one("g1^(2)(0)", stats.g2, true, band));
  const Side s3 = side(stats.g3, band);
  const Side s4 = side(stats.g4, band);
  int order = 0;
  if (s3 == Side::Below) {
    ev.push_back(compare_to_one("g1^(3)(0)", stats.g3, false, band));
    order = 2;
  } else if (s3 == Side::Above) {
    ev.push_back(compare_to_one("g1^(3)(0)", stats.g3, true, band));
    if (s4 == Side::Below) {
      ev.push_back(compare_to_one("g1^(4)(0)", stats.g4, false, band));
      order = 3;
    } else if (s4 == Side::Above) {
      ev.push_back(compare_to_one("g1^(4)(0)", stats.g4, true, band));
      label.kind = RegimeKind::PIT;
      return label;
    } else {
      ev.push_back({"g1^(4)(0) within guard band of 1 (g1^(4)(0) = " + fmt(stats.g4) + ")",
                    std::abs(stats.g4 - 1.0), false});
      return label;
    }
  } else {
    ev.push_back({"g1^(3)(0) within guard band of 1 (g1^(3)(0) = " + fmt(stats.g3) + ")",
                  std::abs(stats.g3 - 1.0), false});
    return label;
  }

  label.kind = RegimeKind::MultiPB;
  label.order = order;

  const bool have_group = group_series && group_series->group_size == order;
  const auto bunching = g1_series ? min_delayed_margin(*g1_series, options.tau_window, -1.0) : std::nullopt;
  const auto antibunching =
      have_group ? min_delayed_margin(*group_series, options.tau_window, 1.0) : std::nullopt;
  if (!bunching || !antibunching) {
    ev.push_back({"bundle conditions not checked (delayed series absent)", 0.0, false});
    return label;
  }
  const std::string window = " for tau in (0, " + fmt(options.tau_window) + "]";
  const std::string gn = "g" + std::to_string(order) + "^(2)";
  ev.push_back({"g1^(2)(0) > g1^(2)(tau)" + window, *bunching, *bunching > 0.0});
  ev.push_back({gn + "(0) < " + gn + "(tau)" + window, *antibunching, *antibunching > 0.0});
  add_extremum(*g1_series, "g1^(2)(tau)", ev);
  add_extremum(*group_series, gn + "(tau)", ev);
  if (*bunching > 0.0 && *antibunching > 0.0) label.kind = RegimeKind::Bundles;
  return label;
}

}  // namespace kerr2jc
