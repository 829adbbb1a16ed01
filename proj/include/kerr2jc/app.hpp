#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kerr2jc/config.hpp"
#include "kerr2jc/sweep.hpp"

namespace kerr2jc {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitSolverError = 3,
};

struct Invocation {
  std::string task;
  std::filesystem::path config;
  std::filesystem::path out_dir;
  std::optional<int> n_max;        ///< overrides numerics.n_max
  std::optional<unsigned> workers; ///< falls back to KERR2JC_WORKERS, then hardware concurrency
};

/// Loads the configuration, applies command-line overrides and checks that the
/// requested task matches the configured one.
RunConfig resolve_config(const Invocation& inv);

/// Worker count from the invocation, the KERR2JC_WORKERS variable, or the hardware.
unsigned resolve_workers(const Invocation& inv);

/// Runs a task and writes its outputs into inv.out_dir. Never throws: failures are
/// reported through the exit code and an error.json record in the output directory.
int run(const Invocation& inv, std::ostream& log);

/// One unit of work behind one or more figure panels.
struct FigureJob {
  enum class Kind { Scan, TauSeries, Amplitude, Resonances };

  Kind kind = Kind::Scan;
  std::vector<std::string> panels;  ///< output stems, e.g. "fig5a"
  std::string description;

  SweepSpec scan;                          ///< Kind::Scan
  ModelParams point;                       ///< Kind::TauSeries and Kind::Amplitude
  std::optional<ResonanceTarget> refine;   ///< locate delta_c before evaluating `point`
  std::vector<int> group_sizes;            ///< Kind::TauSeries
  std::vector<double> chi;                 ///< Kind::Resonances
};

/// Panel recipes for fig2..fig8 at the resolution given in config.figure.
std::vector<FigureJob> figure_jobs(const RunConfig& config);

}  // namespace kerr2jc
