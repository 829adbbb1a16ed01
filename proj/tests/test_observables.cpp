#include "doctest.h"

#include <cmath>
#include <numeric>

#include "kerr2jc/errors.hpp"
#include "kerr2jc/observables.hpp"
#include "kerr2jc/operators.hpp"
#include "kerr2jc/sweep.hpp"
#include "support.hpp"

using namespace kerr2jc;

namespace {

DensityMatrix pure(const HilbertSpace& s, const Vector& psi) {
  return DensityMatrix::normalized(s, psi * psi.adjoint());
}

DensityMatrix coherent(const HilbertSpace& s, Complex alpha) {
  Vector psi = Vector::Zero(s.dim());
  Complex amp = std::exp(-0.5 * std::norm(alpha));
  for (int q = 0; q <= s.n_max(); ++q) {
    psi(s.index(Level::Ground, q)) = amp;
    amp *= alpha / std::sqrt(static_cast<double>(q + 1));
  }
  return pure(s, psi);
}

DensityMatrix thermal(const HilbertSpace& s, double mean) {
  const double x = mean / (1.0 + mean);
  DenseMatrix m = DenseMatrix::Zero(s.dim(), s.dim());
  for (int q = 0; q <= s.n_max(); ++q) m(s.index(Level::Ground, q), s.index(Level::Ground, q)) = std::pow(x, q);
  return DensityMatrix::normalized(s, m);
}

// Tr(a'^n a^n rho) / Tr(a'a rho)^n by explicit operator products.
double brute_force_g(const DensityMatrix& rho, int n) {
  const HilbertSpace& s = rho.space();
  const DenseMatrix a = annihilation(s).dense();
  DenseMatrix an = DenseMatrix::Identity(s.dim(), s.dim());
  for (int k = 0; k < n; ++k) an = a * an;
  const double num = (an.adjoint() * an * rho.matrix()).trace().real();
  const double ns = (a.adjoint() * a * rho.matrix()).trace().real();
  return num / std::pow(ns, n);
}

PhotonStatistics stats_from(double g2, double g3, double g4) {
  PhotonStatistics s;
  s.n_s = 0.1;
  s.g2 = g2;
  s.g3 = g3;
  s.g4 = g4;
  return s;
}

CorrelationSeries series(int group, std::vector<double> values) {
  CorrelationSeries c;
  c.group_size = group;
  for (std::size_t i = 0; i < values.size(); ++i) c.times.push_back(0.5 * static_cast<double>(i));
  c.values = std::move(values);
  c.equal_time = c.values.front();
  return c;
}

}  // namespace

TEST_CASE("single-photon Fock state cannot pair") {
  const HilbertSpace s(5);
  const DensityMatrix one = DensityMatrix::basis_state(s, Level::Ground, 1);
  CHECK(mean_photon_number(one) == 1.0);
  CHECK(equal_time_correlator(one, 2) == 0.0);
  const std::vector<double> amp = photon_amplitude(one);
  CHECK(amp[1] == 1.0);
  for (std::size_t q = 0; q < amp.size(); ++q) {
    if (q != 1) CHECK(amp[q] == 0.0);
  }
}

TEST_CASE("coherent state is Poissonian at every order") {
  const HilbertSpace s(40);
  const DensityMatrix rho = coherent(s, Complex(0.8, 0.6));
  CHECK(mean_photon_number(rho) == doctest::Approx(1.0).epsilon(1e-10));
  for (int n = 2; n <= 4; ++n) CHECK(std::abs(equal_time_correlator(rho, n) - 1.0) < 1e-6);
}

TEST_CASE("thermal state has g2 = 2") {
  const HilbertSpace s(120);
  const DensityMatrix rho = thermal(s, 1.5);
  CHECK(equal_time_correlator(rho, 2) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(equal_time_correlator(rho, 3) == doctest::Approx(6.0).epsilon(1e-8));
}

TEST_CASE("distribution moments agree with explicit operator products") {
  const HilbertSpace s(8);
  for (unsigned seed = 1; seed <= 4; ++seed) {
    const DensityMatrix rho(s, test::random_state(s.dim(), seed));
    for (int n = 2; n <= 4; ++n) {
      CHECK(equal_time_correlator(rho, n) == doctest::Approx(brute_force_g(rho, n)).epsilon(1e-10));
    }
    const std::vector<double> p = photon_distribution(rho);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("photon distribution sums over both atomic levels") {
  const HilbertSpace s(3);
  DenseMatrix m = DenseMatrix::Zero(s.dim(), s.dim());
  m(s.index(Level::Ground, 2), s.index(Level::Ground, 2)) = 0.25;
  m(s.index(Level::Metastable, 2), s.index(Level::Metastable, 2)) = 0.5;
  m(s.index(Level::Metastable, 0), s.index(Level::Metastable, 0)) = 0.25;
  const std::vector<double> p = photon_distribution(DensityMatrix(s, m));
  CHECK(p[2] == 0.75);
  CHECK(p[0] == 0.25);
}

TEST_CASE("amplitude normalization identity") {
  const HilbertSpace s(12);
  for (unsigned seed = 5; seed <= 8; ++seed) {
    const DensityMatrix rho(s, test::random_state(s.dim(), seed));
    const PhotonStatistics st = photon_statistics(rho);
    double lhs = 0.0;
    double rhs = 0.0;
    double weighted = 0.0;
    for (std::size_t q = 1; q < st.p.size(); ++q) {
      lhs += st.p_amp[q] * st.p_amp[q] * st.n_s / static_cast<double>(q);
      rhs += st.p[q];
      weighted += static_cast<double>(q) * st.p[q];
    }
    CHECK(std::abs(lhs - rhs) < 1e-8);
    CHECK(std::abs(weighted - st.n_s) < 1e-8);
    CHECK(std::abs(st.p[0] + lhs - 1.0) < 1e-8);
  }
}

TEST_CASE("correlators are undefined without photons") {
  const HilbertSpace s(3);
  const DensityMatrix vac = DensityMatrix::basis_state(s, Level::Metastable, 0);
  CHECK_THROWS_AS(equal_time_correlator(vac, 2), UndefinedCorrelatorError);
  CHECK_THROWS_AS(photon_amplitude(vac), UndefinedCorrelatorError);
  CHECK_THROWS_AS(equal_time_correlator(DensityMatrix::basis_state(s, Level::Ground, 1), 1), DomainError);
}

TEST_CASE("classification of reported correlator values") {
  CHECK(classify(stats_from(6.28, 1.18, 0.08)).name() == "MultiPB(3)");
  CHECK(classify(stats_from(3.49, 0.027, 0.088)).name() == "MultiPB(2)");
  CHECK(classify(stats_from(1.0, 1.0, 1.0)).name() == "Unclassified");
  CHECK(classify(stats_from(17.1, 5.2, 1.48)).name() == "PIT");
  CHECK(classify(stats_from(1.3e-4, 0.0, 0.0)).name() == "SinglePB");
}

TEST_CASE("bundle label needs both delayed inequalities") {
  const PhotonStatistics st = stats_from(3.49, 0.027, 0.088);
  const CorrelationSeries g1 = series(1, {3.49, 2.0, 1.2, 1.05, 1.0});
  const CorrelationSeries g2n = series(2, {0.3, 0.6, 0.9, 1.0, 1.0});
  const RegimeLabel bundles = classify(st, &g1, &g2n);
  CHECK(bundles.name() == "Bundles(2)");
  CHECK(bundles.evidence.size() >= 4);
  for (const Evidence& e : bundles.evidence) CHECK(e.holds);

  const CorrelationSeries rising = series(1, {3.49, 3.6, 1.2, 1.0, 1.0});
  CHECK(classify(st, &rising, &g2n).name() == "MultiPB(2)");

  const CorrelationSeries wrong_group = series(3, {0.3, 0.6, 0.9, 1.0, 1.0});
  const RegimeLabel blockade_only = classify(st, &g1, &wrong_group);
  CHECK(blockade_only.name() == "MultiPB(2)");
  CHECK_FALSE(blockade_only.evidence.back().holds);
}

TEST_CASE("delays outside the window are ignored") {
  const PhotonStatistics st = stats_from(0.2, 0.0, 0.0);
  const CorrelationSeries inside = series(1, {0.2, 0.5, 0.9, 1.0});
  CHECK(classify(st, &inside).name() == "SinglePB");
  CorrelationSeries dip = series(1, {0.2, 0.5, 0.9, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.1});
  REQUIRE(dip.times.back() > 5.0);
  CHECK(classify(st, &dip).name() == "SinglePB");
  dip.values[3] = 0.1;
  CHECK(classify(st, &dip).name() == "Unclassified");
}

TEST_CASE("guard band around one") {
  CHECK(classify(stats_from(1.0 + 5e-7, 0.5, 0.5)).kind == RegimeKind::Unclassified);
  CHECK(classify(stats_from(1.0 - 5e-7, 0.5, 0.5)).kind == RegimeKind::Unclassified);
  CHECK(classify(stats_from(2.0, 1.0 + 5e-7, 0.5)).kind == RegimeKind::Unclassified);
  CHECK(classify(stats_from(2.0, 2.0, 1.0 - 5e-7)).kind == RegimeKind::Unclassified);
  CHECK(classify(stats_from(1.0 + 2e-6, 1.0 - 2e-6, 0.5)).name() == "MultiPB(2)");
  ClassifyOptions wide;
  wide.guard_band = 0.1;
  CHECK(classify(stats_from(1.05, 0.5, 0.5), nullptr, nullptr, wide).kind == RegimeKind::Unclassified);
}

TEST_CASE("evidence carries every inequality with its margin") {
  const RegimeLabel l = classify(stats_from(6.28, 1.18, 0.08));
  REQUIRE(l.evidence.size() >= 3);
  CHECK(l.evidence[0].margin == doctest::Approx(5.28));
  CHECK(l.evidence[1].margin == doctest::Approx(0.18));
  CHECK(l.evidence[2].margin == doctest::Approx(0.92));
}

TEST_CASE("labels are invariant under rescaling the populations") {
  const PointSolution sol = solve_point(test::paper_params(8.0, 0.9, 0.0, -2.2147 * 4.0), 20);
  const RegimeLabel reference = classify(sol.stats);
  for (double factor : {0.01, 3.0, 250.0}) {
    const DensityMatrix scaled = DensityMatrix::normalized(sol.rho.space(), factor * sol.rho.matrix());
    const PhotonStatistics st = photon_statistics(scaled);
    CHECK(classify(st).name() == reference.name());
    CHECK(st.g2 == doctest::Approx(sol.stats.g2).epsilon(1e-10));
  }
}

TEST_CASE("weak drive at zero detuning emits single photons") {
  const PointSolution sol = solve_point(test::paper_params(8.0, 0.1, 0.0), 30);
  CHECK(sol.stats.p_amp[1] > 0.99);
  for (std::size_t q = 2; q < sol.stats.p_amp.size(); ++q) CHECK(sol.stats.p_amp[q] < 0.05);
  CHECK(classify(sol.stats).name() == "SinglePB");
}

TEST_CASE("strong drive at zero detuning populates two and three photons") {
  const PointSolution sol = solve_point(test::paper_params(8.0, 0.9, 0.0), 30);
  CHECK(sol.stats.p_amp[2] == doctest::Approx(0.18).epsilon(0.03 / 0.18));
  CHECK(sol.stats.p_amp[3] == doctest::Approx(0.12).epsilon(0.03 / 0.12));
}

TEST_CASE("equal-time correlators agree with the delayed series at zero delay") {
  const HilbertSpace s(16);
  const ModelParams p = test::paper_params(8.0, 0.9, 0.0, -2.2147 * 4.0);
  const Liouvillian L = model_liouvillian(p, s);
  const SteadyState ss = steady_state(L);
  for (int n : {1, 2, 3}) {
    const CorrelationSeries c = regression_g2(L, ss.rho, n, std::vector<double>{0.0, 0.1});
    const DenseMatrix a = annihilation(s).dense();
    DenseMatrix an = DenseMatrix::Identity(s.dim(), s.dim());
    for (int k = 0; k < n; ++k) an = a * an;
    const DenseMatrix a2n = an * an;
    const double pair = (a2n.adjoint() * a2n * ss.rho.matrix()).trace().real();
    const double single = (an.adjoint() * an * ss.rho.matrix()).trace().real();
    CHECK(c.values.front() == doctest::Approx(pair / (single * single)).epsilon(1e-8));
    if (n == 1) CHECK(c.values.front() == doctest::Approx(equal_time_correlator(ss.rho, 2)).epsilon(1e-8));
  }
}

TEST_CASE("first local extremum") {
  CHECK(first_local_extremum(series(1, {1.0, 2.0, 3.0, 4.0})) == std::nullopt);
  CHECK(*first_local_extremum(series(1, {1.0, 2.0, 1.5, 1.7})) == 0.5);
  CHECK(*first_local_extremum(series(1, {3.0, 1.0, 1.5})) == 0.5);
}
