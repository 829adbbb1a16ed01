#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace kerr2jc {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Atomic levels kept after adiabatic elimination of the intermediate states.
enum class Level : int { Ground = 0, Metastable = 1 };

/// Truncated cavity Fock space tensored with the two-level atom {|g>, |m>}.
///
/// Basis ordering: the atomic index varies slowest, so the flat index of
/// |q, level> is level * (n_max + 1) + q. Photon-number blocks stay contiguous.
class HilbertSpace {
 public:
  static constexpr int kAtomDim = 2;

  /// Throws DomainError when n_max < 2 (two-photon terms need |2>).
  explicit HilbertSpace(int n_max);

  int n_max() const noexcept { return n_max_; }
  int fock_dim() const noexcept { return n_max_ + 1; }
  int dim() const noexcept { return kAtomDim * (n_max_ + 1); }

  int index(Level level, int q) const noexcept {
    return static_cast<int>(level) * (n_max_ + 1) + q;
  }

  friend bool operator==(const HilbertSpace&, const HilbertSpace&) = default;

 private:
  int n_max_;
};

/// Sparse operator bound to a HilbertSpace. Immutable after construction.
class Operator {
 public:
  Operator(HilbertSpace space, SparseMatrix matrix);

  const HilbertSpace& space() const noexcept { return space_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  Operator adjoint() const;

  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator*(Complex s, const Operator& a);

 private:
  HilbertSpace space_;
  SparseMatrix matrix_;
};

Operator commutator(const Operator& a, const Operator& b);

/// Largest entrywise modulus.
double max_abs(const SparseMatrix& m);
double max_abs(const DenseMatrix& m);

/// Dense, Hermitian, unit-trace state on a HilbertSpace.
class DensityMatrix {
 public:
  static constexpr double kHermiticityTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-8;

  /// Validates all invariants; throws DomainError naming the violated one.
  DensityMatrix(HilbertSpace space, DenseMatrix entries);

  /// Hermitizes (rho + rho^dagger)/2 and rescales to unit trace before validating.
  static DensityMatrix normalized(HilbertSpace space, const DenseMatrix& entries);

  /// Pure Fock-basis projector |q, level><q, level|.
  static DensityMatrix basis_state(HilbertSpace space, Level level, int q);

  const HilbertSpace& space() const noexcept { return space_; }
  const DenseMatrix& matrix() const noexcept { return entries_; }

  /// Tr(O rho).
  Complex expectation(const Operator& op) const;

  double min_eigenvalue() const;

 private:
  HilbertSpace space_;
  DenseMatrix entries_;
};

/// 1/2 * sum |eig(a - b)|.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Column-stacking vectorization: vec(X)[i + j*d] = X(i, j).
Vector vectorize(const DenseMatrix& m);
DenseMatrix unvectorize(const Vector& v, int dim);

}  // namespace kerr2jc
