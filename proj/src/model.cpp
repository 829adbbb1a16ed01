#include "kerr2jc/model.hpp"

#include <cmath>
#include <sstream>

#include "kerr2jc/errors.hpp"
#include "kerr2jc/operators.hpp"

namespace kerr2jc {

void ModelParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"delta_c", delta_c}, {"delta_a", delta_a}, {"chi", chi},     {"g", g},
      {"eta", eta},         {"omega", omega},     {"kappa", kappa}, {"gamma", gamma}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw DomainError(std::string("ModelParams.") + name + " is not finite");
  }
  if (!(kappa > 0.0)) throw DomainError("ModelParams.kappa must be > 0");
  if (gamma < 0.0) throw DomainError("ModelParams.gamma must be >= 0");
}

ModelParams ModelParams::with_resonance_condition() const {
  ModelParams out = *this;
  out.delta_a = 2.0 * delta_c;
  return out;
}

ModelParams derive_effective_params(const RawParams& raw) {
  if (raw.delta_1 == 0.0) throw DomainError("derive_effective_params: division by zero, delta_1 = 0");
  if (raw.delta_2 == 0.0) throw DomainError("derive_effective_params: division by zero, delta_2 = 0");
  ModelParams p;
  p.delta_c = raw.delta_c_prime - raw.g0 * raw.g0 / raw.delta_1;
  p.delta_a = raw.delta_m + (raw.omega_2 * raw.omega_2 - raw.omega_1 * raw.omega_1) / raw.delta_2;
  p.g = -raw.g0 * raw.g0 / raw.delta_1;
  p.omega = -raw.omega_1 * raw.omega_2 / raw.delta_2;
  p.chi = raw.chi;
  p.eta = raw.eta;
  p.kappa = raw.kappa;
  p.gamma = raw.gamma;
  return p;
}

std::vector<std::string> adiabaticity_warnings(const RawParams& raw) {
  std::vector<std::string> out;
  auto check = [&](const char* label, double num, double den) {
    if (den == 0.0) return;
    const double ratio = std::abs(num / den);
    if (ratio > 0.1) {
      std::ostringstream os;
      os << label << " = " << ratio << " > 0.1; adiabatic elimination may be inaccurate";
      out.push_back(os.str());
    }
  };
  check("|g0/delta_1|", raw.g0, raw.delta_1);
  check("|omega_2/delta_2|", raw.omega_2, raw.delta_2);
  return out;
}

Operator build_hamiltonian(const ModelParams& p, const HilbertSpace& space) {
  const Operator a = annihilation(space);
  const Operator ad = a.adjoint();
  const Operator s_gm = sigma(space, Level::Ground, Level::Metastable);
  const Operator s_mg = s_gm.adjoint();
  const Operator s_mm = sigma(space, Level::Metastable, Level::Metastable);
  const Operator ad2 = ad * ad;
  const Operator a2 = a * a;

  return Complex(p.delta_c) * (ad * a) + Complex(p.delta_a) * s_mm +
         Complex(p.chi) * (ad2 * a2) + Complex(p.eta) * (ad + a) +
         Complex(p.g) * (ad2 * s_gm + a2 * s_mg) + Complex(p.omega) * (s_gm + s_mg);
}

const char* to_string(Branch b) noexcept { return b == Branch::Upper ? "upper" : "lower"; }

Eigen::Matrix2d manifold_matrix(int n, const ModelParams& p) {
  if (n < 2) throw DomainError("manifold_matrix: n must be >= 2, got " + std::to_string(n));
  const double nd = n;
  const double coupling = std::sqrt(nd * (nd - 1.0)) * p.g;
  Eigen::Matrix2d m;
  m << nd * p.delta_c + nd * (nd - 1.0) * p.chi, coupling,
      coupling, (nd - 2.0) * p.delta_c + p.delta_a + (nd - 2.0) * (nd - 3.0) * p.chi;
  return m;
}

namespace {
double closed_form_root(int n, const ModelParams& p) {
  const double nd = n;
  return std::sqrt((2.0 * nd - 3.0) * (2.0 * nd - 3.0) * p.chi * p.chi + nd * (nd - 1.0) * p.g * p.g);
}

bool satisfies_resonance_condition(const ModelParams& p) {
  const double scale = std::max({1.0, std::abs(p.delta_a), std::abs(p.delta_c)});
  return std::abs(p.delta_a - 2.0 * p.delta_c) <= 1e-12 * scale;
}
}  // namespace

DressedPair dressed_energies(int n, const ModelParams& p) {
  if (n < 1) throw DomainError("dressed_energies: n must be >= 1");
  if (n == 1) return {p.delta_c, p.delta_c};
  if (satisfies_resonance_condition(p)) {
    const double nd = n;
    const double center = nd * p.delta_c + (nd * nd - 3.0 * nd + 3.0) * p.chi;
    const double root = closed_form_root(n, p);
    return {center + root, center - root};
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(manifold_matrix(n, p), Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(1), es.eigenvalues()(0)};
}

double dressed_splitting(int n, const ModelParams& p) {
  if (n < 2) throw DomainError("dressed_splitting: n must be >= 2");
  const DressedPair e = dressed_energies(n, p);
  return e.upper - e.lower;
}

double resonance_detuning(int n, Branch branch, const ModelParams& p) {
  if (n < 2) throw DomainError("resonance_detuning: n must be >= 2, got " + std::to_string(n));
  const double nd = n;
  const double sign = branch == Branch::Upper ? 1.0 : -1.0;
  return -((nd * nd - 3.0 * nd + 3.0) * p.chi + sign * closed_form_root(n, p)) / nd;
}

DressedLevel dressed_level(int n, Branch branch, const ModelParams& p) {
  DressedLevel out;
  out.n = n;
  out.branch = branch;
  const DressedPair e = dressed_energies(n, p);
  out.energy = branch == Branch::Upper ? e.upper : e.lower;
  out.resonance_detuning = n == 1 ? 0.0 : resonance_detuning(n, branch, p);
  return out;
}

}  // namespace kerr2jc
