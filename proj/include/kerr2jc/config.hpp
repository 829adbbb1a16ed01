#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kerr2jc/liouvillian.hpp"
#include "kerr2jc/model.hpp"
#include "kerr2jc/observables.hpp"
#include "kerr2jc/sweep.hpp"

namespace kerr2jc {

enum class Task { Spectrum, Steady, Correlate, Sweep, Classify, Figure };

const char* to_string(Task t) noexcept;
std::optional<Task> parse_task(std::string_view name);

struct NumericsConfig {
  int n_max = 30;
  double tau_max = 20.0;
  int tau_points = 400;
  PropagationOptions propagation;
  ClassifyOptions classify;

  std::vector<double> taus() const { return uniform_time_grid(tau_max, tau_points); }
};

/// An axis given either as an explicit list or as min/max/points.
struct AxisConfig {
  std::string parameter;
  std::vector<double> values;
  std::optional<double> min;
  std::optional<double> max;
  int points = 0;

  Axis resolve(const std::string& key) const;
};

struct SpectrumConfig {
  double chi_min = 0.0;
  double chi_max = 10.0;
  int chi_points = 101;
  std::vector<int> manifolds{2, 3, 4};
};

struct CorrelateConfig {
  std::vector<int> group_sizes{1, 2};
};

struct SweepConfig {
  std::optional<AxisConfig> axis1;
  std::optional<AxisConfig> axis2;
  bool tie_delta_a = true;
  bool tau_series = false;
};

struct FigureConfig {
  std::string id;
  int points_1d = 401;
  int contour_x_points = 201;
  int contour_y_points = 101;
  int refine_points = 41;
};

struct UnitsConfig {
  std::optional<double> kappa_hz;  ///< kappa / 2 pi in Hz
};

/// Fully resolved run configuration. Frequencies are in units of kappa.
struct RunConfig {
  Task task = Task::Steady;
  std::optional<ModelParams> model;
  std::optional<RawParams> raw;
  NumericsConfig numerics;
  std::optional<ResonanceTarget> refine;
  SpectrumConfig spectrum;
  CorrelateConfig correlate;
  SweepConfig sweep;
  FigureConfig figure;
  UnitsConfig units;

  /// Effective model: `model`, or the reduction of `raw`, or the figure defaults.
  ModelParams effective_model() const;

  /// Non-fatal diagnostics: strong drives and adiabaticity violations.
  std::vector<std::string> warnings() const;
};

/// Parses sectioned key = value text:
///
///   [model]
///   chi = 8.0
///   eta = 0.9
///   [sweep]
///   axis1 = "eta"
///   axis1_values = [0.5, 0.6, 0.7]
///
/// Values are numbers, booleans, double-quoted strings or flat arrays of these.
/// `#` starts a comment. A missing [task] name falls back to `default_task`.
/// Throws ConfigError naming the offending key or line.
RunConfig parse_config_text(std::string_view text, std::optional<Task> default_task = std::nullopt);

/// JSON in the layout written by `config_to_json`. A sidecar object holding the
/// configuration under "config" is accepted as well.
RunConfig parse_config_json(std::string_view text, std::optional<Task> default_task = std::nullopt);

/// Reads a file, dispatching on content: a leading '{' selects JSON.
RunConfig load_config(const std::filesystem::path& path, std::optional<Task> default_task = std::nullopt);

/// Canonical JSON text of a configuration; parse_config_json inverts it exactly.
std::string config_to_json(const RunConfig& config, int indent = 2);

}  // namespace kerr2jc
