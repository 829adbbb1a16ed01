#include "kerr2jc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

const char* to_string(SweepParameter p) noexcept {
  switch (p) {
    case SweepParameter::DeltaC: return "delta_c";
    case SweepParameter::Eta: return "eta";
    case SweepParameter::Omega: return "omega";
    case SweepParameter::Chi: return "chi";
  }
  return "delta_c";
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  for (SweepParameter p : {SweepParameter::DeltaC, SweepParameter::Eta, SweepParameter::Omega,
                           SweepParameter::Chi}) {
    if (name == to_string(p)) return p;
  }
  return std::nullopt;
}

void assign(ModelParams& p, SweepParameter which, double value) {
  switch (which) {
    case SweepParameter::DeltaC: p.delta_c = value; break;
    case SweepParameter::Eta: p.eta = value; break;
    case SweepParameter::Omega: p.omega = value; break;
    case SweepParameter::Chi: p.chi = value; break;
  }
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 1) throw DomainError("linspace: points must be >= 1");
  if (points == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  out.back() = hi;
  return out;
}

PointSolution solve_point(const ModelParams& p, int n_max) {
  const HilbertSpace space(n_max);
  SteadyState ss = steady_state(model_liouvillian(p, space));
  PhotonStatistics stats = photon_statistics(ss.rho);
  return {p, std::move(ss.rho), std::move(stats), ss.residual};
}

namespace {

double objective(const PhotonStatistics& s, ExtremumKind kind) {
  // Smaller is better.
  return kind == ExtremumKind::MinimizeG2 ? s.g2 : -s.n_s;
}

}  // namespace

OptimalPoint optimal_at_resonance(const ModelParams& base, const ResonanceTarget& target, int n_max) {
  if (target.n < 1) throw DomainError("optimal_at_resonance: manifold index must be >= 1");
  if (target.points < 3) throw DomainError("optimal_at_resonance: need at least 3 scan points");
  const double window = target.window > 0.0 ? target.window : 0.2 * std::abs(base.g);
  if (!(window > 0.0)) throw DomainError("optimal_at_resonance: window must be > 0");

  const double center = target.n == 1 ? 0.0 : resonance_detuning(target.n, target.branch, base);
  std::vector<double> scan = linspace(center - window, center + window, target.points);
  std::vector<PhotonStatistics> scan_stats;

  std::vector<double> f;
  f.reserve(scan.size());
  for (double dc : scan) {
    ModelParams p = base;
    p.delta_c = dc;
    p = p.with_resonance_condition();
    PointSolution sol = solve_point(p, n_max);
    f.push_back(objective(sol.stats, target.extremum));
    scan_stats.push_back(std::move(sol.stats));
  }

  const std::size_t last = f.size() - 1;
  std::optional<std::size_t> best;
  for (std::size_t i = 1; i < last; ++i) {
    if (!(f[i] < f[i - 1] && f[i] <= f[i + 1])) continue;
    if (!best) {
      best = i;
      continue;
    }
    const double di = std::abs(scan[i] - center);
    const double db = std::abs(scan[*best] - center);
    if (di < db - 1e-12 || (std::abs(di - db) <= 1e-12 && f[i] < f[*best])) best = i;
  }
  bool on_boundary = false;
  std::string note;
  if (!best) {
    best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    on_boundary = (*best == 0 || *best == last);
    if (on_boundary) note = "extremum on window boundary; widen the window";
  }

  ModelParams p = base;
  p.delta_c = scan[*best];
  return OptimalPoint{center,       scan[*best],      on_boundary,
                      std::move(note), solve_point(p.with_resonance_condition(), n_max),
                      std::move(scan), std::move(scan_stats)};
}

namespace {

void validate_axis(const Axis& axis, const std::string& key) {
  if (axis.values.empty()) throw ConfigError(key, "grid is empty");
  for (double v : axis.values) {
    if (!std::isfinite(v)) throw ConfigError(key, "grid contains a non-finite value");
  }
  if (axis.values.size() > 1) {
    const bool up = axis.values[1] > axis.values[0];
    for (std::size_t i = 1; i < axis.values.size(); ++i) {
      const bool ok = up ? axis.values[i] > axis.values[i - 1] : axis.values[i] < axis.values[i - 1];
      if (!ok) throw ConfigError(key, "grid must be strictly monotone");
    }
  }
}

}  // namespace

void SweepSpec::validate() const {
  base.validate();
  validate_axis(axis1, "axis1");
  if (axis2) {
    validate_axis(*axis2, "axis2");
    if (axis2->parameter == axis1.parameter) throw ConfigError("axis2", "duplicates axis1 parameter");
  }
  if (refine) {
    if (axis1.parameter == SweepParameter::DeltaC || (axis2 && axis2->parameter == SweepParameter::DeltaC)) {
      throw ConfigError("refine", "a refined sweep chooses delta_c itself; it cannot also scan delta_c");
    }
  }
  if (n_max < 2) throw ConfigError("n_max", "must be >= 2");
  if (tau_series) {
    try {
      validate_time_grid(taus);
    } catch (const DomainError& e) {
      throw ConfigError("tau", e.what());
    }
  }
}

RegimeAnalysis analyze_regime(const PointSolution& solution, bool tau_series, std::span<const double> taus,
                              const PropagationOptions& propagation, const ClassifyOptions& options) {
  RegimeAnalysis out;
  if (!tau_series) {
    out.label = classify(solution.stats, nullptr, nullptr, options);
    return out;
  }
  const Liouvillian L = model_liouvillian(solution.params, solution.rho.space());
  out.g1_series = regression_g2(L, solution.rho, 1, taus, propagation);
  const RegimeLabel prelim = classify(solution.stats, &*out.g1_series, nullptr, options);
  if (prelim.kind == RegimeKind::MultiPB) {
    out.group_series = regression_g2(L, solution.rho, prelim.order, taus, propagation);
    out.label = classify(solution.stats, &*out.g1_series, &*out.group_series, options);
  } else {
    out.label = prelim;
  }
  return out;
}

SweepRecord evaluate_point(const SweepSpec& spec, const std::vector<double>& coordinates) {
  SweepRecord rec;
  rec.coordinates = coordinates;
  rec.meta.n_max = spec.n_max;

  ModelParams p = spec.base;
  assign(p, spec.axis1.parameter, coordinates.at(0));
  if (spec.axis2) assign(p, spec.axis2->parameter, coordinates.at(1));
  if (spec.tie_delta_a) p = p.with_resonance_condition();
  rec.params = p;

  try {
    std::optional<PointSolution> sol;
    if (spec.refine) {
      OptimalPoint opt = optimal_at_resonance(p, *spec.refine, spec.n_max);
      rec.delta_c_star = opt.delta_c_star;
      rec.meta.on_boundary = opt.on_boundary;
      sol = std::move(opt.solution);
    } else {
      sol = solve_point(p, spec.n_max);
    }
    rec.params = sol->params;
    rec.stats = sol->stats;
    rec.meta.residual = sol->residual;

    RegimeAnalysis regime = analyze_regime(*sol, spec.tau_series, spec.taus, spec.propagation, spec.classify);
    rec.label = std::move(regime.label);
    rec.g1_series = std::move(regime.g1_series);
    rec.group_series = std::move(regime.group_series);
  } catch (const Error& e) {
    rec.meta.failed = true;
    rec.meta.error = e.what();
    rec.meta.residual = std::nan("");
    rec.label = RegimeLabel{};
  }
  return rec;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  std::vector<std::vector<double>> grid;
  for (double x : spec.axis1.values) {
    if (spec.axis2) {
      for (double y : spec.axis2->values) grid.push_back({x, y});
    } else {
      grid.push_back({x});
    }
  }

  std::vector<SweepRecord> records(grid.size());
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(grid.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) records[i] = evaluate_point(spec, grid[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return records;
}

}  // namespace kerr2jc
