#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "kerr2jc/hilbert_space.hpp"
#include "kerr2jc/model.hpp"

namespace kerr2jc {

/// Jump operator o with prefactor `rate` multiplying D[o] rho = 2 o rho o' - o'o rho - rho o'o.
struct CollapseChannel {
  Operator op;
  double rate;
};

/// Superoperator acting on column-stacked density matrices: L vec(rho) = vec(d rho / dt).
class Liouvillian {
 public:
  Liouvillian(HilbertSpace space, SparseMatrix matrix);

  const HilbertSpace& space() const noexcept { return space_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  DenseMatrix apply(const DenseMatrix& rho) const;

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

/// -i[H, .] + sum_k rate_k D[o_k]. Throws DomainError for negative rates.
Liouvillian build_liouvillian(const Operator& hamiltonian, const std::vector<CollapseChannel>& collapse);

/// The model's master equation: collapse = {(a, kappa/2), (sigma_gm, gamma/2)}.
Liouvillian model_liouvillian(const ModelParams& p, const HilbertSpace& space);

/// Row vector t with t . vec(rho) = Tr(rho).
Vector trace_functional(int dim);

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;  ///< max |L vec(rho)| after Hermitization and normalization
};

/// Unique null vector of L. One row of L is replaced by the trace constraint and the
/// resulting sparse system is LU-factorized; a second right-hand side checks that the
/// factorization is nonsingular. Throws DegenerateSteadyStateError with the detected
/// null-space dimension, or SolverError if the residual is not small.
SteadyState steady_state(const Liouvillian& L);

/// Numerical nullity of L: dense SVD for small spaces, shifted block inverse iteration otherwise
/// (counts at most six independent null directions).
std::size_t null_space_dimension(const Liouvillian& L, double relative_tol = 1e-9);

enum class PropagationMethod {
  Pade,        ///< diagonal Pade exponential action via sparse LU, A-stable
  RungeKutta,  ///< adaptive Dormand-Prince 5(4)
};

struct PropagationOptions {
  PropagationMethod method = PropagationMethod::Pade;
  double max_step = 0.05;  ///< Pade substep bound (units of 1/kappa)
  int pade_order = 8;
  double rel_tol = 1e-8;   ///< Runge-Kutta tolerances
  double abs_tol = 1e-12;
};

/// Advances vectorized operators under exp(L t). Caches one factorization set per
/// distinct step size; not safe to share between threads.
class Propagator {
 public:
  explicit Propagator(const Liouvillian& L, PropagationOptions options = {});
  ~Propagator();
  Propagator(Propagator&&) noexcept;
  Propagator& operator=(Propagator&&) noexcept;

  /// v <- exp(L dt) v. dt >= 0.
  void advance(Vector& v, double dt);

  /// Calls observer(i, taus[i], v(taus[i])) in order. taus must start at 0 and increase strictly.
  void propagate(Vector v, std::span<const double> taus,
                 const std::function<void(std::size_t, double, const Vector&)>& observer);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Throws DomainError unless taus is nonempty, finite, starts at 0 and is strictly increasing.
void validate_time_grid(std::span<const double> taus);

/// Evenly spaced [0, t_max] with `points` samples.
std::vector<double> uniform_time_grid(double t_max, int points);

/// [0, 20/kappa] with 400 points.
std::vector<double> default_time_grid();

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

Trajectory evolve(const Liouvillian& L, const DensityMatrix& rho0, std::span<const double> taus,
                  const PropagationOptions& options = {});

/// g_n^(2)(tau) = Tr[a'^n a^n e^{L tau}(a^n rho_s a'^n)] / <a'^n a^n>^2.
struct CorrelationSeries {
  int group_size = 1;
  std::vector<double> times;
  std::vector<double> values;
  double normalization = 0.0;  ///< <a'^n a^n>_rho_s
  double equal_time = 0.0;     ///< <a'^{2n} a^{2n}> / <a'^n a^n>^2
};

/// Throws UndefinedCorrelatorError("no n-photon population") when <a'^n a^n> vanishes,
/// and SolverError if the tau = 0 value disagrees with the equal-time formula.
CorrelationSeries regression_g2(const Liouvillian& L, const DensityMatrix& rho_s, int n,
                                std::span<const double> taus, const PropagationOptions& options = {});

}  // namespace kerr2jc
