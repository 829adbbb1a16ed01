#include "kerr2jc/app.hpp"

#include <cmath>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

namespace {

struct Recipe {
  const RunConfig& config;
  ModelParams base;
  std::vector<FigureJob> jobs;

  explicit Recipe(const RunConfig& c) : config(c), base(c.effective_model()) {
    base.delta_c = 0.0;
    base.delta_a = 0.0;
    base.chi = 0.0;
    base.eta = 0.0;
    base.omega = 0.0;
  }

  ModelParams with(double chi, double eta, double omega) const {
    ModelParams p = base;
    p.chi = chi;
    p.eta = eta;
    p.omega = omega;
    return p;
  }

  SweepSpec spec(const ModelParams& p, Axis axis1, std::optional<Axis> axis2 = std::nullopt) const {
    SweepSpec s;
    s.base = p;
    s.axis1 = std::move(axis1);
    s.axis2 = std::move(axis2);
    s.n_max = config.numerics.n_max;
    s.taus = config.numerics.taus();
    s.propagation = config.numerics.propagation;
    s.classify = config.numerics.classify;
    return s;
  }

  Axis detuning_axis(int points) const {
    const double g = std::abs(base.g);
    return {SweepParameter::DeltaC, linspace(-3.0 * g, 1.0 * g, points)};
  }

  Axis axis(SweepParameter which, double lo, double hi, int points) const {
    return {which, linspace(lo, hi, points)};
  }

  ResonanceTarget target(int n, Branch branch) const {
    ResonanceTarget t;
    t.n = n;
    t.branch = branch;
    t.points = config.figure.refine_points;
    return t;
  }

  void scan(std::vector<std::string> panels, std::string description, SweepSpec s) {
    FigureJob j;
    j.kind = FigureJob::Kind::Scan;
    j.panels = std::move(panels);
    j.description = std::move(description);
    j.scan = std::move(s);
    jobs.push_back(std::move(j));
  }

  void refined_scan(std::vector<std::string> panels, std::string description, const ModelParams& p, Axis a,
                    ResonanceTarget t) {
    SweepSpec s = spec(p, std::move(a));
    s.refine = t;
    scan(std::move(panels), std::move(description), std::move(s));
  }

  void point(FigureJob::Kind kind, std::string panel, std::string description, ModelParams p,
             std::optional<ResonanceTarget> refine, std::vector<int> groups = {}) {
    FigureJob j;
    j.kind = kind;
    j.panels = {std::move(panel)};
    j.description = std::move(description);
    j.point = p.with_resonance_condition();
    j.refine = refine;
    j.group_sizes = std::move(groups);
    jobs.push_back(std::move(j));
  }
};

}  // namespace

std::vector<FigureJob> figure_jobs(const RunConfig& config) {
  Recipe r(config);
  const FigureConfig& f = config.figure;
  const int n1 = f.points_1d;
  const int cx = f.contour_x_points;
  const int cy = f.contour_y_points;
  using K = FigureJob::Kind;
  using P = SweepParameter;

  if (f.id == "fig2") {
    r.scan({"fig2a", "fig2b"}, "g2 and n_s vs delta_c for chi = 0 and 8, eta = 0.1",
           r.spec(r.with(0.0, 0.1, 0.0), {P::Chi, {0.0, 8.0}}, r.detuning_axis(n1)));
    r.refined_scan({"fig2c"}, "optimal g2 and n_s at the single-photon resonance vs chi, eta = 0.1",
                   r.with(0.0, 0.1, 0.0), r.axis(P::Chi, 0.0, 10.0, n1), r.target(1, Branch::Upper));
    r.point(K::TauSeries, "fig2d", "g1^(2)(tau) at delta_c = 0, chi = 8, eta = 0.1", r.with(8.0, 0.1, 0.0),
            std::nullopt, {1});
  } else if (f.id == "fig3") {
    r.scan({"fig3a", "fig3b"}, "n_s and g^(n) vs delta_c, chi = 8, eta = 0.9",
           r.spec(r.with(8.0, 0.9, 0.0), r.detuning_axis(n1)));
    r.scan({"fig3c", "fig3d", "fig3e", "fig3f"}, "n_s and g^(n) on the eta x delta_c plane, chi = 8",
           r.spec(r.with(8.0, 0.0, 0.0), r.axis(P::Eta, 0.05, 1.5, cy), r.detuning_axis(cx)));
  } else if (f.id == "fig4") {
    r.refined_scan({"fig4a"}, "optimal g^(n) and n_s at the single-photon resonance vs eta, chi = 8",
                   r.with(8.0, 0.0, 0.0), r.axis(P::Eta, 0.1, 1.5, n1), r.target(1, Branch::Upper));
    r.refined_scan({"fig4b"}, "optimal g^(n) and n_s at the red two-photon resonance vs eta, chi = 8",
                   r.with(8.0, 0.0, 0.0), r.axis(P::Eta, 0.1, 1.5, n1), r.target(2, Branch::Upper));
    r.point(K::Amplitude, "fig4c", "p~(q) at delta_c = 0, chi = 8, eta = 0.9", r.with(8.0, 0.9, 0.0),
            std::nullopt);
    r.point(K::Amplitude, "fig4c_inset", "p~(q) at delta_c = 0, chi = 8, eta = 0.1", r.with(8.0, 0.1, 0.0),
            std::nullopt);
    r.point(K::Amplitude, "fig4d", "p~(q) at the red two-photon resonance, chi = 8, eta = 0.9",
            r.with(8.0, 0.9, 0.0), r.target(2, Branch::Upper));
  } else if (f.id == "fig5") {
    r.scan({"fig5a", "fig5b"}, "n_s and g^(n) vs delta_c, chi = 8, omega = 0.65",
           r.spec(r.with(8.0, 0.0, 0.65), r.detuning_axis(n1)));
    r.point(K::TauSeries, "fig5c", "g1^(2)(tau) and g2^(2)(tau) at the red two-photon resonance, omega = 0.65",
            r.with(8.0, 0.0, 0.65), r.target(2, Branch::Upper), {1, 2});
    r.point(K::TauSeries, "fig5d", "g1^(2)(tau) and g3^(2)(tau) at the blue two-photon resonance, omega = 0.65",
            r.with(8.0, 0.0, 0.65), r.target(2, Branch::Lower), {1, 3});
  } else if (f.id == "fig6") {
    const ModelParams p = r.with(8.0, 0.0, 0.0);
    r.refined_scan({"fig6a"}, "optimal g^(n) and n_s vs omega at the red two-photon resonance", p,
                   r.axis(P::Omega, 0.05, 1.5, n1), r.target(2, Branch::Upper));
    r.refined_scan({"fig6b"}, "optimal g^(n) and n_s vs omega at the blue two-photon resonance", p,
                   r.axis(P::Omega, 0.05, 1.5, n1), r.target(2, Branch::Lower));
    r.refined_scan({"fig6c"}, "optimal g^(n) and n_s vs omega at the four-photon resonance", p,
                   r.axis(P::Omega, 0.05, 1.5, n1), r.target(4, Branch::Lower));
  } else if (f.id == "fig7") {
    const ModelParams p = r.with(0.0, 0.0, 0.65);
    r.scan({"fig7a", "fig7b", "fig7c", "fig7d"}, "n_s and g^(n) on the chi x delta_c plane, omega = 0.65",
           r.spec(p, r.axis(P::Chi, 0.0, 10.0, cy), r.detuning_axis(cx)));
    r.refined_scan({"fig7e"}, "optimal g^(n) and n_s vs chi at the red two-photon resonance, omega = 0.65", p,
                   r.axis(P::Chi, 0.0, 10.0, n1), r.target(2, Branch::Upper));
    r.refined_scan({"fig7f"}, "optimal g^(n) and n_s vs chi at the blue two-photon resonance, omega = 0.65", p,
                   r.axis(P::Chi, 0.0, 10.0, n1), r.target(2, Branch::Lower));
    FigureJob lines;
    lines.kind = K::Resonances;
    lines.panels = {"fig7_resonances"};
    lines.description = "analytic resonance detunings of manifolds 2..4 vs chi (reference lines)";
    lines.point = r.base;
    lines.chi = linspace(0.0, 10.0, cy);
    r.jobs.push_back(std::move(lines));
  } else if (f.id == "fig8") {
    r.scan({"fig8a", "fig8b"}, "n_s and g^(n) vs delta_c, chi = 8, eta = 0.35, omega = 0.65",
           r.spec(r.with(8.0, 0.35, 0.65), r.detuning_axis(n1)));
    r.scan({"fig8c", "fig8d"}, "n_s and g^(n) vs delta_c, chi = 8, eta = 0.65, omega = 0",
           r.spec(r.with(8.0, 0.65, 0.0), r.detuning_axis(n1)));
    r.scan({"fig8e", "fig8f"}, "n_s and g^(n) vs delta_c, chi = 8, eta = 0.65, omega = 0.1",
           r.spec(r.with(8.0, 0.65, 0.1), r.detuning_axis(n1)));
  } else {
    throw ConfigError("figure.id", "expected one of fig2..fig8, got '" + f.id + "'");
  }
  return std::move(r.jobs);
}

}  // namespace kerr2jc
