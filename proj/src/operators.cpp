#include "kerr2jc/operators.hpp"

#include <cmath>
#include <vector>

#include "kerr2jc/errors.hpp"

namespace kerr2jc {

namespace {
using Triplet = Eigen::Triplet<Complex>;

Operator from_triplets(const HilbertSpace& space, const std::vector<Triplet>& t) {
  SparseMatrix m(space.dim(), space.dim());
  m.setFromTriplets(t.begin(), t.end());
  return {space, std::move(m)};
}

constexpr Level kLevels[] = {Level::Ground, Level::Metastable};
}  // namespace

Operator annihilation(const HilbertSpace& space) {
  std::vector<Triplet> t;
  for (Level l : kLevels) {
    for (int q = 1; q <= space.n_max(); ++q) {
      t.emplace_back(space.index(l, q - 1), space.index(l, q), std::sqrt(static_cast<double>(q)));
    }
  }
  return from_triplets(space, t);
}

Operator creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

Operator photon_number(const HilbertSpace& space) {
  std::vector<Triplet> t;
  for (Level l : kLevels) {
    for (int q = 1; q <= space.n_max(); ++q) t.emplace_back(space.index(l, q), space.index(l, q), q);
  }
  return from_triplets(space, t);
}

Operator atomic_transition(const HilbertSpace& space, Level from_level, Level to_level) {
  std::vector<Triplet> t;
  for (int q = 0; q <= space.n_max(); ++q) {
    t.emplace_back(space.index(to_level, q), space.index(from_level, q), 1.0);
  }
  return from_triplets(space, t);
}

Operator excitation_number(const HilbertSpace& space) {
  return photon_number(space) + Complex(2.0) * sigma(space, Level::Metastable, Level::Metastable);
}

Operator identity(const HilbertSpace& space) {
  std::vector<Triplet> t;
  for (int i = 0; i < space.dim(); ++i) t.emplace_back(i, i, 1.0);
  return from_triplets(space, t);
}

Operator annihilation_power(const HilbertSpace& space, int n) {
  if (n < 0) throw DomainError("annihilation_power: negative power");
  Operator out = identity(space);
  const Operator a = annihilation(space);
  for (int k = 0; k < n; ++k) out = a * out;
  return out;
}

}  // namespace kerr2jc
