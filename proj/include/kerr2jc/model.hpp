#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "kerr2jc/hilbert_space.hpp"

namespace kerr2jc {

/// Effective two-photon Kerr Jaynes-Cummings constants. All frequencies in units of kappa.
struct ModelParams {
  double delta_c = 0.0;  ///< cavity-light detuning
  double delta_a = 0.0;  ///< atom-light (two-photon) detuning
  double chi = 0.0;      ///< Kerr strength
  double g = 0.0;        ///< two-photon atom-cavity coupling
  double eta = 0.0;      ///< cavity drive amplitude
  double omega = 0.0;    ///< two-photon atom pump amplitude
  double kappa = 1.0;    ///< cavity decay, the reference unit
  double gamma = 0.0;    ///< decay of the |m> -> |g> coherence

  /// Throws DomainError unless kappa > 0, gamma >= 0 and every field is finite.
  void validate() const;

  /// Copy with delta_a = 2 delta_c.
  ModelParams with_resonance_condition() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Bare parameters of the four-level scheme (angular-frequency units).
struct RawParams {
  double g0 = 0.0;
  double delta_1 = 0.0;
  double omega_1 = 0.0;
  double omega_2 = 0.0;
  double delta_2 = 0.0;
  double delta_m = 0.0;
  double delta_c_prime = 0.0;
  double chi = 0.0;
  double eta = 0.0;
  double kappa = 1.0;
  double gamma = 0.0;
};

/// Adiabatic elimination of |e> and |r>:
///   delta_c = delta_c' - g0^2/delta_1,  delta_a = delta_m + (omega_2^2 - omega_1^2)/delta_2,
///   g = -g0^2/delta_1,  omega = -omega_1 omega_2 / delta_2.
/// chi, eta, kappa and gamma pass through. Throws DomainError naming delta_1 or
/// delta_2 when either is zero.
ModelParams derive_effective_params(const RawParams& raw);

/// Non-fatal diagnostics for |g0/delta_1| > 0.1 or |omega_2/delta_2| > 0.1.
std::vector<std::string> adiabaticity_warnings(const RawParams& raw);

/// H = dc a'a + da s_mm + chi a'a'aa + eta (a' + a) + g (a'^2 s_gm + a^2 s_mg) + Omega (s_gm + s_mg).
Operator build_hamiltonian(const ModelParams& p, const HilbertSpace& space);

enum class Branch { Upper, Lower };

const char* to_string(Branch b) noexcept;

/// 2x2 Hamiltonian block on {|n, g>, |n-2, m>} of the undriven model. n >= 2.
Eigen::Matrix2d manifold_matrix(int n, const ModelParams& p);

struct DressedPair {
  double upper = 0.0;
  double lower = 0.0;
};

/// E_{n,+/-}. For n = 1 both equal delta_c. For n >= 2 the closed form is used
/// when delta_a = 2 delta_c, otherwise manifold_matrix is diagonalized.
DressedPair dressed_energies(int n, const ModelParams& p);

/// Upper-minus-lower eigenvalue gap of manifold n (n >= 2).
double dressed_splitting(int n, const ModelParams& p);

/// Delta_c solving E_{n,branch}(delta_c) = 0 with delta_a = 2 delta_c:
///   delta_c = -[(n^2 - 3n + 3) chi +/- sqrt((2n-3)^2 chi^2 + n(n-1) g^2)] / n.
/// Only chi and g of `p` are used.
double resonance_detuning(int n, Branch branch, const ModelParams& p);

struct DressedLevel {
  int n = 1;
  Branch branch = Branch::Upper;
  double energy = 0.0;
  double resonance_detuning = 0.0;
};

DressedLevel dressed_level(int n, Branch branch, const ModelParams& p);

}  // namespace kerr2jc
