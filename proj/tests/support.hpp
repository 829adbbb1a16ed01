#pragma once

#include <random>

#include "kerr2jc/hilbert_space.hpp"
#include "kerr2jc/model.hpp"

namespace kerr2jc::test {

/// g = 4, gamma = 0.1, kappa = 1, delta_a = 2 delta_c.
inline ModelParams paper_params(double chi, double eta, double omega, double delta_c = 0.0) {
  ModelParams p;
  p.g = 4.0;
  p.gamma = 0.1;
  p.chi = chi;
  p.eta = eta;
  p.omega = omega;
  p.delta_c = delta_c;
  return p.with_resonance_condition();
}

inline DenseMatrix random_hermitian(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  DenseMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
  }
  return (m + m.adjoint()) / 2.0;
}

/// Random full-rank density matrix.
inline DenseMatrix random_state(int dim, unsigned seed) {
  const DenseMatrix h = random_hermitian(dim, seed);
  DenseMatrix rho = h * h.adjoint() + DenseMatrix::Identity(dim, dim) * 0.1;
  return rho / rho.trace();
}

}  // namespace kerr2jc::test
