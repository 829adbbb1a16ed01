#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kerr2jc/liouvillian.hpp"
#include "kerr2jc/model.hpp"
#include "kerr2jc/observables.hpp"

namespace kerr2jc {

enum class SweepParameter { DeltaC, Eta, Omega, Chi };

const char* to_string(SweepParameter p) noexcept;
std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);

void assign(ModelParams& p, SweepParameter which, double value);

struct Axis {
  SweepParameter parameter = SweepParameter::DeltaC;
  std::vector<double> values;
};

/// Evenly spaced [lo, hi] with `points` samples (points >= 1).
std::vector<double> linspace(double lo, double hi, int points);

enum class ExtremumKind { MinimizeG2, MaximizePhotonNumber };

/// Local Delta_c search around an analytic n-photon resonance.
struct ResonanceTarget {
  int n = 1;                      ///< 1 = single-photon resonance at delta_c = 0
  Branch branch = Branch::Upper;  ///< ignored for n = 1
  double window = 0.0;            ///< half-width; 0 selects 0.2 g
  ExtremumKind extremum = ExtremumKind::MinimizeG2;
  int points = 41;
};

struct PointSolution {
  ModelParams params;
  DensityMatrix rho;
  PhotonStatistics stats;
  double residual = 0.0;
};

/// Steady state and photon statistics at one parameter point.
PointSolution solve_point(const ModelParams& p, int n_max);

struct OptimalPoint {
  double center = 0.0;        ///< analytic resonance detuning
  double delta_c_star = 0.0;  ///< selected extremum
  bool on_boundary = false;   ///< extremum sits on the window edge; widen the window
  std::string note;
  PointSolution solution;
  std::vector<double> scan_delta_c;
  std::vector<PhotonStatistics> scan_stats;
};

/// Scans `target.points` detunings across center +/- window with delta_a = 2 delta_c and
/// returns the extremum. Interior local extrema are preferred, nearest to the center first;
/// if none exists the global extremum is returned and flagged as on_boundary.
OptimalPoint optimal_at_resonance(const ModelParams& base, const ResonanceTarget& target, int n_max);

struct RegimeAnalysis {
  RegimeLabel label;
  std::optional<CorrelationSeries> g1_series;     ///< g_1^(2)(tau)
  std::optional<CorrelationSeries> group_series;  ///< g_n^(2)(tau) for a MultiPB(n) candidate
};

/// Labels a solved point. With `tau_series` the delayed g_1^(2)(tau) is computed and, for a
/// MultiPB(n) candidate, g_n^(2)(tau) as well, so that bundles can be recognized.
RegimeAnalysis analyze_regime(const PointSolution& solution, bool tau_series, std::span<const double> taus,
                              const PropagationOptions& propagation = {}, const ClassifyOptions& options = {});

struct SweepSpec {
  ModelParams base;
  Axis axis1;
  std::optional<Axis> axis2;
  bool tie_delta_a = true;
  std::optional<ResonanceTarget> refine;  ///< re-extremize delta_c at every grid point
  bool tau_series = false;                ///< compute delayed series and bundle labels
  std::vector<double> taus = default_time_grid();
  int n_max = 30;
  PropagationOptions propagation;
  ClassifyOptions classify;

  /// Throws ConfigError for empty, non-finite or non-monotone grids, duplicate axes,
  /// or a refined sweep along delta_c.
  void validate() const;
};

struct SolverMeta {
  int n_max = 0;
  double residual = 0.0;
  bool failed = false;
  bool on_boundary = false;
  std::string error;
};

struct SweepRecord {
  std::vector<double> coordinates;
  ModelParams params;
  std::optional<double> delta_c_star;
  PhotonStatistics stats;
  RegimeLabel label;
  SolverMeta meta;
  std::optional<CorrelationSeries> g1_series;
  std::optional<CorrelationSeries> group_series;
};

/// Evaluates one grid point. Solver failures are recorded in meta, never thrown.
SweepRecord evaluate_point(const SweepSpec& spec, const std::vector<double>& coordinates);

/// One record per grid point in row-major order (axis1 outer). Points are evaluated by a
/// bounded pool of `workers` threads (0 = hardware concurrency); output does not depend on it.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec, unsigned workers = 1);

}  // namespace kerr2jc
