#pragma once

#include <optional>

#include "invspan/instance.hpp"

namespace invspan {

// Min-max certificate for unconstrained instances: the minimum weighted span
// equals max{0, omega1, omega2}. omega1 ranges over equal-(1/w)-mass members,
// omega2 over (small, large) pairs, both across all cost indices.
struct MinMaxCertificate {
  ExtRational omega1 = ExtRational::neg_inf();
  ExtRational omega2 = ExtRational::neg_inf();
  Rational value;  // max{0, omega1, omega2}
  Rational d, D;   // witness parameters; the vector p^{d,D} is feasible
  DeviationVector witness;

  struct Omega1Witness {
    int cost_index = 0;
    ElemSet member;
  };
  struct Omega2Witness {
    int small_cost_index = 0, large_cost_index = 0;
    ElemSet small, large;
  };
  std::optional<Omega1Witness> omega1_witness;
  std::optional<Omega2Witness> omega2_witness;
};

// Throws Error("certificate requires unconstrained bounds") on a constrained
// instance; the witness vector is asserted feasible before returning.
MinMaxCertificate certificate(const Instance& inst, std::size_t enumeration_cap);

}  // namespace invspan
