#include "kerr2jc/app.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "json.hpp"

#include "kerr2jc/errors.hpp"
#include "kerr2jc/io.hpp"

namespace kerr2jc {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr int kSidecarSchemaVersion = 1;

json to_json(const ModelParams& p) {
  return {{"delta_c", p.delta_c}, {"delta_a", p.delta_a}, {"chi", p.chi},     {"g", p.g},
          {"eta", p.eta},         {"omega", p.omega},     {"kappa", p.kappa}, {"gamma", p.gamma}};
}

json to_json(const PhotonStatistics& s) {
  return {{"n_s", s.n_s}, {"g2", s.g2}, {"g3", s.g3}, {"g4", s.g4}};
}

json to_json(const RegimeLabel& label) {
  json ev = json::array();
  for (const Evidence& e : label.evidence) {
    ev.push_back({{"condition", e.condition}, {"margin", e.margin}, {"holds", e.holds}});
  }
  return {{"name", label.name()}, {"kind", to_string(label.kind)}, {"order", label.order}, {"evidence", ev}};
}

json to_json(const ResonanceTarget& t) {
  return {{"n", t.n},
          {"branch", to_string(t.branch)},
          {"window", t.window},
          {"extremum", t.extremum == ExtremumKind::MinimizeG2 ? "min_g2" : "max_n_s"},
          {"points", t.points}};
}

json to_json(const Axis& a) {
  return {{"parameter", to_string(a.parameter)},
          {"first", a.values.front()},
          {"last", a.values.back()},
          {"points", a.values.size()}};
}

json to_json(const SweepSpec& s) {
  json out = {{"base", to_json(s.base)}, {"axis1", to_json(s.axis1)}};
  if (s.axis2) out["axis2"] = to_json(*s.axis2);
  out["tie_delta_a"] = s.tie_delta_a;
  if (s.refine) out["refine"] = to_json(*s.refine);
  out["tau_series"] = s.tau_series;
  out["n_max"] = s.n_max;
  return out;
}

class Sidecar {
 public:
  Sidecar(const RunConfig& config, std::string stem) : stem_(std::move(stem)) {
    doc_["schema_version"] = kSidecarSchemaVersion;
    doc_["csv_schema_version"] = kCsvSchemaVersion;
    doc_["task"] = to_string(config.task);
    doc_["config"] = json::parse(config_to_json(config));
    doc_["effective_model"] = to_json(config.effective_model());
    doc_["warnings"] = config.warnings();
    if (config.units.kappa_hz) doc_["kappa_hz"] = *config.units.kappa_hz;
    doc_["outputs"] = json::array();
  }

  json& operator[](const char* key) { return doc_[key]; }

  void add_output(const std::string& file) { doc_["outputs"].push_back(file); }

  void write(const fs::path& dir) {
    add_output(stem_ + ".json");
    write_text(dir / (stem_ + ".json"), doc_.dump(2) + "\n");
  }

 private:
  std::string stem_;
  json doc_;
};

struct SolvedPoint {
  PointSolution solution;
  std::optional<double> delta_c_star;
  bool on_boundary = false;
};

SolvedPoint solve(const ModelParams& p, const std::optional<ResonanceTarget>& refine, int n_max) {
  if (refine) {
    OptimalPoint opt = optimal_at_resonance(p, *refine, n_max);
    return {std::move(opt.solution), opt.delta_c_star, opt.on_boundary};
  }
  return {solve_point(p, n_max), std::nullopt, false};
}

json point_json(const SolvedPoint& s) {
  json out = {{"params", to_json(s.solution.params)}, {"residual", s.solution.residual}};
  if (s.delta_c_star) {
    out["delta_c_star"] = *s.delta_c_star;
    out["on_boundary"] = s.on_boundary;
  }
  out["statistics"] = to_json(s.solution.stats);
  return out;
}

SweepSpec make_sweep_spec(const RunConfig& c) {
  SweepSpec s;
  s.base = c.effective_model();
  s.axis1 = c.sweep.axis1->resolve("sweep.axis1");
  if (c.sweep.axis2) s.axis2 = c.sweep.axis2->resolve("sweep.axis2");
  s.tie_delta_a = c.sweep.tie_delta_a;
  s.refine = c.refine;
  s.tau_series = c.sweep.tau_series;
  s.taus = c.numerics.taus();
  s.n_max = c.numerics.n_max;
  s.propagation = c.numerics.propagation;
  s.classify = c.numerics.classify;
  return s;
}

json sweep_diagnostics(const std::vector<SweepRecord>& records) {
  json out = json::array();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    if (!r.meta.failed && !r.meta.on_boundary) continue;
    json d = {{"index", i}, {"coordinates", r.coordinates}};
    if (r.meta.failed) d["error"] = r.meta.error;
    if (r.meta.on_boundary) d["note"] = "extremum on window boundary; widen the window";
    out.push_back(d);
  }
  return out;
}

CsvTable resonance_table(const ModelParams& base, const std::vector<double>& chi, const std::vector<int>& manifolds) {
  std::vector<std::string> header{"chi"};
  for (int n : manifolds) {
    header.push_back("resonance_" + std::to_string(n) + "_upper");
    header.push_back("resonance_" + std::to_string(n) + "_lower");
  }
  CsvTable t(header);
  for (double x : chi) {
    ModelParams p = base;
    p.chi = x;
    std::vector<std::string> cells{format_number(x)};
    for (int n : manifolds) {
      cells.push_back(format_number(resonance_detuning(n, Branch::Upper, p)));
      cells.push_back(format_number(resonance_detuning(n, Branch::Lower, p)));
    }
    t.add_row(std::move(cells));
  }
  return t;
}

void run_spectrum(const RunConfig& c, const fs::path& out) {
  const ModelParams base = c.effective_model();
  const SpectrumConfig& sp = c.spectrum;
  std::vector<std::string> header{"chi"};
  for (int n : sp.manifolds) {
    const std::string k = std::to_string(n);
    for (const char* h : {"energy_upper", "energy_lower", "splitting", "resonance_upper", "resonance_lower"}) {
      header.push_back(std::string(h) + "_" + k);
    }
  }
  CsvTable t(header);
  for (double chi : linspace(sp.chi_min, sp.chi_max, sp.chi_points)) {
    ModelParams p = base;
    p.chi = chi;
    std::vector<std::string> cells{format_number(chi)};
    for (int n : sp.manifolds) {
      const DressedPair e = dressed_energies(n, p);
      cells.push_back(format_number(e.upper));
      cells.push_back(format_number(e.lower));
      cells.push_back(format_number(dressed_splitting(n, p)));
      cells.push_back(format_number(resonance_detuning(n, Branch::Upper, p)));
      cells.push_back(format_number(resonance_detuning(n, Branch::Lower, p)));
    }
    t.add_row(std::move(cells));
  }
  t.write(out / "spectrum.csv");
  Sidecar side(c, "spectrum");
  side.add_output("spectrum.csv");
  side.write(out);
}

void run_steady(const RunConfig& c, const fs::path& out) {
  const SolvedPoint s = solve(c.effective_model(), c.refine, c.numerics.n_max);
  const RegimeLabel label = classify(s.solution.stats, nullptr, nullptr, c.numerics.classify);

  SweepSpec shape;
  shape.axis1 = {SweepParameter::DeltaC, {s.solution.params.delta_c}};
  SweepRecord rec;
  rec.coordinates = {s.solution.params.delta_c};
  rec.params = s.solution.params;
  rec.stats = s.solution.stats;
  rec.label = label;
  rec.meta.residual = s.solution.residual;
  sweep_table(shape, {rec}, c.units.kappa_hz).write(out / "steady.csv");
  distribution_table(s.solution.stats).write(out / "distribution.csv");

  Sidecar side(c, "steady");
  side.add_output("steady.csv");
  side.add_output("distribution.csv");
  side["result"] = point_json(s);
  side["result"]["label"] = to_json(label);
  side.write(out);
}

void run_correlate(const RunConfig& c, const fs::path& out) {
  const SolvedPoint s = solve(c.effective_model(), c.refine, c.numerics.n_max);
  const Liouvillian L = model_liouvillian(s.solution.params, s.solution.rho.space());
  const std::vector<double> taus = c.numerics.taus();
  std::vector<CorrelationSeries> series;
  json groups = json::array();
  for (int n : c.correlate.group_sizes) {
    series.push_back(regression_g2(L, s.solution.rho, n, taus, c.numerics.propagation));
    const CorrelationSeries& cs = series.back();
    groups.push_back({{"group_size", n},
                      {"normalization", cs.normalization},
                      {"equal_time", cs.equal_time},
                      {"tau_end_value", cs.values.back()}});
  }
  correlation_table(series, c.units.kappa_hz).write(out / "correlate.csv");
  Sidecar side(c, "correlate");
  side.add_output("correlate.csv");
  side["result"] = point_json(s);
  side["result"]["series"] = groups;
  side.write(out);
}

void run_classify(const RunConfig& c, const fs::path& out) {
  const SolvedPoint s = solve(c.effective_model(), c.refine, c.numerics.n_max);
  const RegimeAnalysis regime =
      analyze_regime(s.solution, true, c.numerics.taus(), c.numerics.propagation, c.numerics.classify);
  std::vector<CorrelationSeries> series{*regime.g1_series};
  if (regime.group_series) series.push_back(*regime.group_series);
  correlation_table(series, c.units.kappa_hz).write(out / "classify.csv");

  Sidecar side(c, "classify");
  side.add_output("classify.csv");
  side["result"] = point_json(s);
  side["result"]["label"] = to_json(regime.label);
  side.write(out);
}

void run_sweep_task(const RunConfig& c, const fs::path& out, unsigned workers) {
  const SweepSpec spec = make_sweep_spec(c);
  const std::vector<SweepRecord> records = run_sweep(spec, workers);
  sweep_table(spec, records, c.units.kappa_hz).write(out / "sweep.csv");
  Sidecar side(c, "sweep");
  side.add_output("sweep.csv");
  side["spec"] = to_json(spec);
  side["diagnostics"] = sweep_diagnostics(records);
  side.write(out);
}

void run_figure(const RunConfig& c, const fs::path& out, unsigned workers) {
  Sidecar side(c, c.figure.id);
  json panels = json::array();
  for (const FigureJob& job : figure_jobs(c)) {
    json info = {{"panels", job.panels}, {"description", job.description}};
    CsvTable table({"placeholder"});
    switch (job.kind) {
      case FigureJob::Kind::Scan: {
        const std::vector<SweepRecord> records = run_sweep(job.scan, workers);
        table = sweep_table(job.scan, records, c.units.kappa_hz);
        info["kind"] = "scan";
        info["spec"] = to_json(job.scan);
        info["diagnostics"] = sweep_diagnostics(records);
        break;
      }
      case FigureJob::Kind::TauSeries: {
        const SolvedPoint s = solve(job.point, job.refine, c.numerics.n_max);
        const Liouvillian L = model_liouvillian(s.solution.params, s.solution.rho.space());
        const std::vector<double> taus = c.numerics.taus();
        std::vector<CorrelationSeries> series;
        for (int n : job.group_sizes) {
          series.push_back(regression_g2(L, s.solution.rho, n, taus, c.numerics.propagation));
        }
        const CorrelationSeries* group = series.size() > 1 ? &series[1] : nullptr;
        const RegimeLabel label = classify(s.solution.stats, &series[0], group, c.numerics.classify);
        table = correlation_table(series, c.units.kappa_hz);
        info["kind"] = "tau_series";
        info["point"] = point_json(s);
        if (job.refine) info["refine"] = to_json(*job.refine);
        info["label"] = to_json(label);
        break;
      }
      case FigureJob::Kind::Amplitude: {
        const SolvedPoint s = solve(job.point, job.refine, c.numerics.n_max);
        table = distribution_table(s.solution.stats);
        info["kind"] = "amplitude";
        info["point"] = point_json(s);
        if (job.refine) info["refine"] = to_json(*job.refine);
        break;
      }
      case FigureJob::Kind::Resonances:
        table = resonance_table(job.point, job.chi, {2, 3, 4});
        info["kind"] = "resonances";
        break;
    }
    json files = json::array();
    for (const std::string& stem : job.panels) {
      table.write(out / (stem + ".csv"));
      side.add_output(stem + ".csv");
      files.push_back(stem + ".csv");
    }
    info["files"] = files;
    panels.push_back(info);
  }
  side["panels"] = panels;
  side.write(out);
}

void write_error(const fs::path& out, int code, const char* kind, const std::string& key, const std::string& message) {
  json err = {{"status", "error"}, {"exit_code", code}, {"kind", kind}, {"message", message}};
  if (!key.empty()) err["key"] = key;
  try {
    write_text(out / "error.json", err.dump(2) + "\n");
  } catch (const std::exception&) {
    // The exit code still reports the failure.
  }
}

}  // namespace

RunConfig resolve_config(const Invocation& inv) {
  const auto requested = parse_task(inv.task);
  if (!requested) {
    throw ConfigError("task", "unknown task '" + inv.task +
                                  "' (spectrum, steady, correlate, sweep, classify, figure)");
  }
  RunConfig c = load_config(inv.config, requested);
  if (c.task != *requested) {
    throw ConfigError("task.name", std::string("configuration is for task '") + to_string(c.task) + "' but '" +
                                       inv.task + "' was requested");
  }
  if (inv.n_max) {
    if (*inv.n_max < 2) throw ConfigError("n-max", "must be >= 2");
    c.numerics.n_max = *inv.n_max;
  }
  return c;
}

unsigned resolve_workers(const Invocation& inv) {
  if (inv.workers) return *inv.workers;
  if (const char* env = std::getenv("KERR2JC_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 0 || v > 4096) throw ConfigError("KERR2JC_WORKERS", "expected a nonnegative integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(const Invocation& inv, std::ostream& log) {
  try {
    fs::create_directories(inv.out_dir);
  } catch (const std::exception& e) {
    log << "error: cannot create output directory: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    const RunConfig c = resolve_config(inv);
    const unsigned workers = resolve_workers(inv);
    for (const std::string& w : c.warnings()) log << "warning: " << w << "\n";
    std::error_code ec;
    fs::remove(inv.out_dir / "error.json", ec);

    switch (c.task) {
      case Task::Spectrum: run_spectrum(c, inv.out_dir); break;
      case Task::Steady: run_steady(c, inv.out_dir); break;
      case Task::Correlate: run_correlate(c, inv.out_dir); break;
      case Task::Sweep: run_sweep_task(c, inv.out_dir, workers); break;
      case Task::Classify: run_classify(c, inv.out_dir); break;
      case Task::Figure: run_figure(c, inv.out_dir, workers); break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    write_error(inv.out_dir, kExitConfigError, "config", e.key(), e.what());
    return kExitConfigError;
  } catch (const Error& e) {
    log << "solver error: " << e.what() << "\n";
    write_error(inv.out_dir, kExitSolverError, "solver", "", e.what());
    return kExitSolverError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    write_error(inv.out_dir, kExitFailure, "internal", "", e.what());
    return kExitFailure;
  }
}

}  // namespace kerr2jc
