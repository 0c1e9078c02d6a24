#pragma once

#include <optional>

#include "invspan/reduce.hpp"

namespace invspan {

// Extremal ratios characterizing feasibility of a SPEC-LU instance, computed by
// family enumeration. m1/m3 are minima (+inf when their domain is empty), m2/m4
// maxima (-inf when empty); the primed values substitute 0 for the infinities.
struct MValues {
  ExtRational m1, m2, m3, m4;
  Rational m1p, m2p, m3p, m4p;
};

// With several cost vectors every (member, cost-index) pair contributes one
// ratio. m1 additionally needs a finite u_in, m2 a finite l_out; they are only
// consulted in the witness cases that guarantee it.
MValues compute_m_values(const SpecLUInstance& sub, std::size_t enumeration_cap);

struct FeasibilityVerdict {
  bool feasible = false;
  Rational delta, Delta;             // the tested candidate parameters
  std::optional<DeviationVector> witness;  // present iff feasible
};

// Selects the candidate (delta, Delta) by the finiteness of u_in/l_out, builds
// the clamped vector, and tests it with one oracle pass per cost vector.
FeasibilityVerdict feasibility_witness(const SpecLUInstance& sub, const Oracle& oracle,
                                       std::size_t enumeration_cap);

}  // namespace invspan
