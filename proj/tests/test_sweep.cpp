#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "kerr2jc/errors.hpp"
#include "kerr2jc/sweep.hpp"
#include "support.hpp"

using namespace kerr2jc;

namespace {

SweepSpec delta_c_scan(double chi, double eta, double omega, std::vector<double> values_over_g, int n_max) {
  SweepSpec spec;
  spec.base = test::paper_params(chi, eta, omega);
  spec.axis1.parameter = SweepParameter::DeltaC;
  for (double v : values_over_g) spec.axis1.values.push_back(v * spec.base.g);
  spec.n_max = n_max;
  return spec;
}

// Axis coordinates (in units of g) of interior local maxima of n_s.
std::vector<double> n_s_peaks(const std::vector<SweepRecord>& records, double g) {
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const double v = records[i].stats.n_s;
    if (v > records[i - 1].stats.n_s && v >= records[i + 1].stats.n_s) peaks.push_back(records[i].coordinates[0] / g);
  }
  return peaks;
}

bool has_peak_near(const std::vector<double>& peaks, double x, double tol) {
  return std::any_of(peaks.begin(), peaks.end(), [&](double p) { return std::abs(p - x) <= tol; });
}

}  // namespace

TEST_CASE("parameter names") {
  for (SweepParameter p : {SweepParameter::DeltaC, SweepParameter::Eta, SweepParameter::Omega, SweepParameter::Chi}) {
    CHECK(parse_sweep_parameter(to_string(p)) == p);
  }
  CHECK_FALSE(parse_sweep_parameter("gamma").has_value());
  ModelParams m;
  assign(m, SweepParameter::Omega, 0.65);
  CHECK(m.omega == 0.65);
}

TEST_CASE("linspace endpoints and spacing") {
  const std::vector<double> v = linspace(-1.0, 1.0, 5);
  CHECK(v == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), DomainError);
}

TEST_CASE("sweep validation rejects malformed grids") {
  SweepSpec spec = delta_c_scan(8.0, 0.1, 0.0, {-1.0, 0.0, 1.0}, 6);
  CHECK_NOTHROW(spec.validate());

  SweepSpec empty = spec;
  empty.axis1.values.clear();
  CHECK_THROWS_WITH_AS(empty.validate(), doctest::Contains("axis1"), ConfigError);

  SweepSpec nonmono = spec;
  nonmono.axis1.values = {0.0, 1.0, 0.5};
  CHECK_THROWS_AS(nonmono.validate(), ConfigError);

  SweepSpec repeated = spec;
  repeated.axis1.values = {0.0, 0.0};
  CHECK_THROWS_AS(repeated.validate(), ConfigError);

  SweepSpec nonfinite = spec;
  nonfinite.axis1.values = {0.0, std::nan("")};
  CHECK_THROWS_AS(nonfinite.validate(), ConfigError);

  SweepSpec descending = spec;
  descending.axis1.values = {1.0, 0.0, -1.0};
  CHECK_NOTHROW(descending.validate());

  SweepSpec dup = spec;
  dup.axis2 = Axis{SweepParameter::DeltaC, {0.0}};
  CHECK_THROWS_AS(dup.validate(), ConfigError);

  SweepSpec refined = spec;
  refined.refine = ResonanceTarget{};
  CHECK_THROWS_WITH_AS(refined.validate(), doctest::Contains("refine"), ConfigError);

  SweepSpec bad_tau = spec;
  bad_tau.tau_series = true;
  bad_tau.taus = {0.5, 1.0};
  CHECK_THROWS_AS(bad_tau.validate(), ConfigError);

  CHECK_THROWS_AS(run_sweep(empty), ConfigError);
}

TEST_CASE("records follow row-major order and tie delta_a") {
  SweepSpec spec = delta_c_scan(8.0, 0.1, 0.0, {-0.5, 0.25}, 6);
  spec.axis2 = Axis{SweepParameter::Eta, {0.1, 0.2, 0.3}};
  const std::vector<SweepRecord> records = run_sweep(spec);
  REQUIRE(records.size() == 6);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const SweepRecord& r = records[i];
    CHECK(r.coordinates[0] == spec.axis1.values[i / 3]);
    CHECK(r.coordinates[1] == spec.axis2->values[i % 3]);
    CHECK(r.params.delta_c == r.coordinates[0]);
    CHECK(r.params.eta == r.coordinates[1]);
    CHECK(r.params.delta_a == 2.0 * r.params.delta_c);
    CHECK_FALSE(r.meta.failed);
    CHECK(r.meta.residual < 1e-8);
    CHECK(r.meta.n_max == 6);
  }

  spec.tie_delta_a = false;
  spec.base.delta_a = 0.3;
  for (const SweepRecord& r : run_sweep(spec)) CHECK(r.params.delta_a == 0.3);
}

TEST_CASE("sweep output does not depend on the worker count") {
  SweepSpec spec = delta_c_scan(8.0, 0.4, 0.3, {-2.5, -2.0, -1.0, -0.3, 0.0, 0.2, 0.7}, 10);
  const std::vector<SweepRecord> serial = run_sweep(spec, 1);
  const std::vector<SweepRecord> parallel = run_sweep(spec, 3);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].coordinates == parallel[i].coordinates);
    CHECK(serial[i].stats.n_s == parallel[i].stats.n_s);
    CHECK(serial[i].stats.g2 == parallel[i].stats.g2);
    CHECK(serial[i].stats.g3 == parallel[i].stats.g3);
    CHECK(serial[i].stats.g4 == parallel[i].stats.g4);
    CHECK(serial[i].stats.p_amp == parallel[i].stats.p_amp);
    CHECK(serial[i].label.name() == parallel[i].label.name());
    CHECK(serial[i].meta.residual == parallel[i].meta.residual);
  }
}

TEST_CASE("solver failures are recorded in place") {
  SweepSpec spec = delta_c_scan(8.0, 0.2, 0.0, {0.1, 0.2, 0.3}, 5);
  spec.base.g = 0.0;
  spec.base.gamma = 0.0;
  const std::vector<SweepRecord> records = run_sweep(spec, 2);
  REQUIRE(records.size() == 3);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].coordinates[0] == spec.axis1.values[i]);
    CHECK(records[i].meta.failed);
    CHECK(records[i].meta.error.find("dimension 2") != std::string::npos);
    CHECK(std::isnan(records[i].meta.residual));
    CHECK(records[i].label.kind == RegimeKind::Unclassified);
  }
}

TEST_CASE("g2 profile is symmetric in delta_c only without Kerr") {
  const std::vector<double> grid = linspace(-1.0, 1.0, 21);
  const std::vector<SweepRecord> linear = run_sweep(delta_c_scan(0.0, 0.1, 0.0, grid, 12));
  const std::vector<SweepRecord> kerr = run_sweep(delta_c_scan(8.0, 0.1, 0.0, grid, 12));
  double worst_linear = 0.0;
  double worst_kerr = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::size_t j = grid.size() - 1 - i;
    worst_linear = std::max(worst_linear, std::abs(linear[i].stats.g2 - linear[j].stats.g2) / linear[i].stats.g2);
    worst_kerr = std::max(worst_kerr, std::abs(kerr[i].stats.g2 - kerr[j].stats.g2) / kerr[i].stats.g2);
  }
  CHECK(worst_linear < 1e-8);
  CHECK(worst_kerr > 0.1);
}

TEST_CASE("single-photon optimum sits at zero detuning") {
  const OptimalPoint opt = optimal_at_resonance(test::paper_params(8.0, 0.1, 0.0), ResonanceTarget{}, 30);
  CHECK(opt.center == 0.0);
  CHECK(std::abs(opt.delta_c_star) < 0.05 * 4.0);
  CHECK_FALSE(opt.on_boundary);
  CHECK(opt.solution.stats.g2 > 1e-5);
  CHECK(opt.solution.stats.g2 < 1e-3);
  CHECK(opt.scan_delta_c.size() == 41);
  CHECK(opt.scan_delta_c.front() == doctest::Approx(-0.8));
  CHECK(opt.scan_delta_c.back() == doctest::Approx(0.8));
  for (const PhotonStatistics& s : opt.scan_stats) CHECK(s.g2 >= opt.solution.stats.g2 - 1e-15);
  CHECK(opt.solution.params.delta_a == 2.0 * opt.delta_c_star);
}

TEST_CASE("extremum on the window edge is flagged") {
  ResonanceTarget target;
  target.n = 2;
  target.branch = Branch::Lower;
  target.window = 0.1;
  target.points = 11;
  const OptimalPoint opt = optimal_at_resonance(test::paper_params(8.0, 0.1, 0.0), target, 12);
  CHECK(opt.on_boundary);
  CHECK(!opt.note.empty());
  const bool at_edge = opt.delta_c_star == opt.scan_delta_c.front() || opt.delta_c_star == opt.scan_delta_c.back();
  CHECK(at_edge);

  ResonanceTarget bad;
  bad.points = 2;
  CHECK_THROWS_AS(optimal_at_resonance(test::paper_params(8.0, 0.1, 0.0), bad, 6), DomainError);
}

TEST_CASE("refined sweep re-extremizes at every point") {
  SweepSpec spec;
  spec.base = test::paper_params(8.0, 0.1, 0.0);
  spec.axis1 = Axis{SweepParameter::Eta, {0.1, 0.2}};
  spec.refine = ResonanceTarget{};
  spec.refine->points = 11;
  spec.n_max = 10;
  const std::vector<SweepRecord> records = run_sweep(spec);
  for (const SweepRecord& r : records) {
    REQUIRE(r.delta_c_star.has_value());
    CHECK(r.params.delta_c == *r.delta_c_star);
    CHECK(r.params.delta_a == 2.0 * *r.delta_c_star);
  }
}

TEST_CASE("cavity drive produces multiphoton emission peaks") {
  const std::vector<SweepRecord> records = run_sweep(delta_c_scan(8.0, 0.9, 0.0, linspace(-2.5, 0.5, 121), 20));
  const std::vector<double> peaks = n_s_peaks(records, 4.0);
  CHECK(has_peak_near(peaks, -2.22, 0.05));
  CHECK(has_peak_near(peaks, 0.0, 0.05));
  CHECK(has_peak_near(peaks, 0.22, 0.05));
}

TEST_CASE("atom pump produces two- and four-photon emission peaks") {
  const std::vector<SweepRecord> records = run_sweep(delta_c_scan(8.0, 0.0, 0.65, linspace(-2.5, 0.5, 121), 20));
  const std::vector<double> peaks = n_s_peaks(records, 4.0);
  CHECK(has_peak_near(peaks, -2.22, 0.05));
  CHECK(has_peak_near(peaks, -0.85, 0.05));
  CHECK(has_peak_near(peaks, 0.22, 0.05));
}

TEST_CASE("delayed series are attached on request") {
  SweepSpec spec = delta_c_scan(8.0, 0.0, 0.65, {-2.2147}, 14);
  spec.tau_series = true;
  spec.taus = uniform_time_grid(5.0, 26);
  const std::vector<SweepRecord> records = run_sweep(spec);
  REQUIRE(records.size() == 1);
  const SweepRecord& r = records[0];
  REQUIRE(r.g1_series.has_value());
  CHECK(r.g1_series->values.size() == 26);
  if (r.label.kind == RegimeKind::MultiPB || r.label.kind == RegimeKind::Bundles) {
    REQUIRE(r.group_series.has_value());
    CHECK(r.group_series->group_size == r.label.order);
  }
}
