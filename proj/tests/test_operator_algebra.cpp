#include "doctest.h"

#include <cmath>

#include "kerr2jc/errors.hpp"
#include "kerr2jc/model.hpp"
#include "kerr2jc/operators.hpp"
#include "support.hpp"

using namespace kerr2jc;

namespace {

Vector ket(const HilbertSpace& s, Level level, int q) {
  Vector v = Vector::Zero(s.dim());
  v(s.index(level, q)) = 1.0;
  return v;
}

// Zeroes rows and columns of Fock levels above `keep` on both atomic levels.
DenseMatrix restrict_fock(const HilbertSpace& s, DenseMatrix m, int keep) {
  for (int q = keep + 1; q <= s.n_max(); ++q) {
    for (Level l : {Level::Ground, Level::Metastable}) {
      m.row(s.index(l, q)).setZero();
      m.col(s.index(l, q)).setZero();
    }
  }
  return m;
}

}  // namespace

TEST_CASE("hilbert space dimension and basis ordering") {
  const HilbertSpace s(7);
  CHECK(s.dim() == 16);
  CHECK(s.fock_dim() == 8);
  CHECK(s.index(Level::Ground, 3) == 3);
  CHECK(s.index(Level::Metastable, 0) == 8);
  CHECK_THROWS_AS(HilbertSpace(1), DomainError);
}

TEST_CASE("annihilation lowers Fock states with sqrt(q)") {
  const HilbertSpace s(2);
  const DenseMatrix a = annihilation(s).dense();
  CHECK(max_abs(DenseMatrix(a * ket(s, Level::Ground, 1) - ket(s, Level::Ground, 0))) == 0.0);
  CHECK(max_abs(DenseMatrix(a * ket(s, Level::Ground, 0))) == 0.0);
  CHECK(max_abs(DenseMatrix(a * ket(s, Level::Metastable, 2) - std::sqrt(2.0) * ket(s, Level::Metastable, 1))) ==
        doctest::Approx(0.0));
}

TEST_CASE("number operator diagonal equals q") {
  const HilbertSpace s(10);
  const DenseMatrix n = photon_number(s).dense();
  for (int q = 0; q <= 10; ++q) {
    for (Level l : {Level::Ground, Level::Metastable}) {
      CHECK(n(s.index(l, q), s.index(l, q)).real() == doctest::Approx(q).epsilon(1e-14));
    }
  }
  CHECK(max_abs(DenseMatrix(n - DenseMatrix(n.diagonal().asDiagonal()))) == 0.0);
}

TEST_CASE("creation is the exact adjoint of annihilation") {
  const HilbertSpace s(6);
  CHECK(max_abs(DenseMatrix(creation(s).dense().adjoint() - annihilation(s).dense())) == 0.0);
  CHECK(max_abs(DenseMatrix(creation(s).adjoint().dense() - annihilation(s).dense())) == 0.0);
}

TEST_CASE("canonical commutator holds below the truncation edge") {
  const HilbertSpace s(9);
  const DenseMatrix c = commutator(annihilation(s), creation(s)).dense();
  const DenseMatrix inner = restrict_fock(s, c, s.n_max() - 1);
  const DenseMatrix id = restrict_fock(s, DenseMatrix::Identity(s.dim(), s.dim()), s.n_max() - 1);
  CHECK(max_abs(DenseMatrix(inner - id)) < 1e-12);
}

TEST_CASE("cavity and atom factors commute") {
  const HilbertSpace s(5);
  const Operator a = annihilation(s);
  for (Level i : {Level::Ground, Level::Metastable}) {
    for (Level j : {Level::Ground, Level::Metastable}) {
      CHECK(max_abs(commutator(a, sigma(s, i, j)).matrix()) < 1e-12);
    }
  }
}

TEST_CASE("atomic projector algebra") {
  const HilbertSpace s(3);
  const Operator s_gm = sigma(s, Level::Ground, Level::Metastable);
  const Operator s_mg = sigma(s, Level::Metastable, Level::Ground);
  const Operator s_gg = sigma(s, Level::Ground, Level::Ground);
  const Operator s_mm = sigma(s, Level::Metastable, Level::Metastable);
  CHECK(max_abs((s_gm * s_mg - s_gg).matrix()) == 0.0);
  CHECK(max_abs((s_mm * s_mm - s_mm).matrix()) == 0.0);
  CHECK(max_abs(DenseMatrix(s_gm.dense().adjoint() - s_mg.dense())) == 0.0);
  CHECK(max_abs((s_gg + s_mm - identity(s)).matrix()) == 0.0);
  // sigma_gm = |g><m| maps |m> to |g>.
  const Vector out = s_gm.dense() * ket(s, Level::Metastable, 2);
  CHECK(max_abs(DenseMatrix(out - ket(s, Level::Ground, 2))) == 0.0);
  CHECK(max_abs((atomic_transition(s, Level::Metastable, Level::Ground) - s_gm).matrix()) == 0.0);
}

TEST_CASE("excitation number counts photons plus two per metastable atom") {
  const HilbertSpace s(8);
  const DenseMatrix n = excitation_number(s).dense();
  for (int q = 2; q <= 8; ++q) {
    CHECK(n(s.index(Level::Ground, q), s.index(Level::Ground, q)).real() == doctest::Approx(q));
    CHECK(n(s.index(Level::Metastable, q - 2), s.index(Level::Metastable, q - 2)).real() == doctest::Approx(q));
  }
}

TEST_CASE("undriven Hamiltonian conserves the excitation number away from the truncation edge") {
  const HilbertSpace s(12);
  ModelParams p = test::paper_params(8.0, 0.0, 0.0, -3.1);
  p.delta_a = 1.7;
  const DenseMatrix c = commutator(excitation_number(s), build_hamiltonian(p, s)).dense();
  CHECK(max_abs(restrict_fock(s, c, s.n_max() - 2)) < 1e-12);

  p.eta = 0.3;
  const DenseMatrix driven = commutator(excitation_number(s), build_hamiltonian(p, s)).dense();
  CHECK(max_abs(restrict_fock(s, driven, s.n_max() - 2)) > 0.1);
}

TEST_CASE("annihilation power composes") {
  const HilbertSpace s(6);
  const Operator a = annihilation(s);
  CHECK(max_abs((annihilation_power(s, 3) - a * a * a).matrix()) < 1e-13);
  CHECK(max_abs((annihilation_power(s, 0) - identity(s)).matrix()) == 0.0);
}

TEST_CASE("density matrix invariants are enforced") {
  const HilbertSpace s(2);
  DenseMatrix m = DenseMatrix::Zero(s.dim(), s.dim());
  m(0, 0) = 1.0;
  CHECK_NOTHROW(DensityMatrix(s, m));

  DenseMatrix not_hermitian = m;
  not_hermitian(0, 1) = 1e-6;
  CHECK_THROWS_AS(DensityMatrix(s, not_hermitian), DomainError);

  DenseMatrix bad_trace = m * 1.01;
  CHECK_THROWS_AS(DensityMatrix(s, bad_trace), DomainError);

  DenseMatrix negative = DenseMatrix::Zero(s.dim(), s.dim());
  negative(0, 0) = 1.1;
  negative(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityMatrix(s, negative), DomainError);

  CHECK_THROWS_AS(DensityMatrix(HilbertSpace(3), m), DomainError);
}

TEST_CASE("vectorization is column stacking and inverts") {
  const DenseMatrix m = test::random_hermitian(5, 3);
  const Vector v = vectorize(m);
  CHECK(v(1 + 2 * 5) == m(1, 2));
  CHECK(max_abs(DenseMatrix(unvectorize(v, 5) - m)) == 0.0);
}
