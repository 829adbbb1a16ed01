#pragma once

#include "kerr2jc/hilbert_space.hpp"

namespace kerr2jc {

/// Cavity annihilation operator, identity on the atom: a|q> = sqrt(q)|q-1>.
Operator annihilation(const HilbertSpace& space);
Operator creation(const HilbertSpace& space);

/// a^dagger a.
Operator photon_number(const HilbertSpace& space);

/// |to><from| on the atom, identity on the cavity.
Operator atomic_transition(const HilbertSpace& space, Level from_level, Level to_level);

/// sigma_ij = |i><j|, the notation used in the Hamiltonian.
inline Operator sigma(const HilbertSpace& space, Level i, Level j) {
  return atomic_transition(space, j, i);
}

/// N = a^dagger a + 2 sigma_mm, conserved by the undriven Hamiltonian.
Operator excitation_number(const HilbertSpace& space);

Operator identity(const HilbertSpace& space);

/// a^n (n >= 0).
Operator annihilation_power(const HilbertSpace& space, int n);

}  // namespace kerr2jc
