#include "kerr2jc/hilbert_space.hpp"

#include <string>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

HilbertSpace::HilbertSpace(int n_max) : n_max_(n_max) {
  if (n_max < 2) {
    throw DomainError("HilbertSpace: n_max must be >= 2, got " + std::to_string(n_max));
  }
}

Operator::Operator(HilbertSpace space, SparseMatrix matrix)
    : space_(space), matrix_(std::move(matrix)) {
  if (matrix_.rows() != space_.dim() || matrix_.cols() != space_.dim()) {
    throw DomainError("Operator: matrix shape does not match space dimension " +
                      std::to_string(space_.dim()));
  }
  matrix_.makeCompressed();
}

Operator Operator::adjoint() const { return {space_, SparseMatrix(matrix_.adjoint())}; }

namespace {
void require_same_space(const Operator& a, const Operator& b) {
  if (!(a.space() == b.space())) {
    throw DomainError("Operator: operands live on different Hilbert spaces");
  }
}
}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return {a.space_, SparseMatrix(a.matrix_ + b.matrix_)};
}

Operator operator-(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return {a.space_, SparseMatrix(a.matrix_ - b.matrix_)};
}

Operator operator*(const Operator& a, const Operator& b) {
  require_same_space(a, b);
  return {a.space_, SparseMatrix(a.matrix_ * b.matrix_)};
}

Operator operator*(Complex s, const Operator& a) { return {a.space_, SparseMatrix(s * a.matrix_)}; }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

double max_abs(const SparseMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  }
  return out;
}

double max_abs(const DenseMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

DensityMatrix::DensityMatrix(HilbertSpace space, DenseMatrix entries)
    : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw DomainError("DensityMatrix: shape does not match space dimension");
  }
  const double herm = max_abs(DenseMatrix(entries_ - entries_.adjoint()));
  if (herm > kHermiticityTol) {
    throw DomainError("DensityMatrix: not Hermitian (max |rho - rho^dagger| = " +
                      std::to_string(herm) + ")");
  }
  const Complex tr = entries_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("DensityMatrix: trace deviates from 1 (trace = " +
                      std::to_string(tr.real()) + ")");
  }
  const double min_eig = min_eigenvalue();
  if (min_eig < -kPositivityTol) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::normalized(HilbertSpace space, const DenseMatrix& entries) {
  DenseMatrix herm = 0.5 * (entries + entries.adjoint());
  const double tr = herm.trace().real();
  if (!(std::abs(tr) > 0.0)) throw DomainError("DensityMatrix: cannot normalize zero trace");
  herm /= tr;
  return {space, std::move(herm)};
}

DensityMatrix DensityMatrix::basis_state(HilbertSpace space, Level level, int q) {
  if (q < 0 || q > space.n_max()) throw DomainError("DensityMatrix: Fock index out of range");
  DenseMatrix m = DenseMatrix::Zero(space.dim(), space.dim());
  const int i = space.index(level, q);
  m(i, i) = 1.0;
  return {space, std::move(m)};
}

Complex DensityMatrix::expectation(const Operator& op) const {
  if (!(op.space() == space_)) throw DomainError("expectation: operator on a different space");
  // Tr(O rho) = sum_ij O_ij rho_ji
  Complex acc = 0.0;
  const SparseMatrix& o = op.matrix();
  for (int j = 0; j < o.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(o, j); it; ++it) acc += it.value() * entries_(j, it.row());
  }
  return acc;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(entries_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  const DenseMatrix diff = a.matrix() - b.matrix();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (diff + diff.adjoint()),
                                                Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Vector vectorize(const DenseMatrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

DenseMatrix unvectorize(const Vector& v, int dim) {
  if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
    throw DomainError("unvectorize: length is not dim^2");
  }
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

}  // namespace kerr2jc
