#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invspan/family.hpp"
#include "invspan/rational.hpp"
#include "invspan/sets.hpp"

namespace invspan {

// A bound-constrained inverse optimization instance. Weights are canonically
// rescaled at construction so every 1/w(s) is a positive integer; spans computed
// against the canonical weights are divided by `weight_scale` when reported in
// the caller's original scale.
struct Instance {
  std::vector<std::string> ids;
  FamilyDescriptor family;
  ElemSet input_solution;                    // F*
  std::vector<std::vector<Rational>> costs;  // k cost vectors, each of size n
  std::vector<Rational> weights;             // canonical: 1/w(s) integral
  std::vector<ExtRational> lower;
  std::vector<ExtRational> upper;
  Rational weight_scale = 1;     // canonical w = weight_scale * original w
  Rational inv_weight_norm = 0;  // (1/w)(S) under canonical weights

  int n() const { return static_cast<int>(ids.size()); }
  int k() const { return static_cast<int>(costs.size()); }

  bool unconstrained() const;

  // Validates invariants, rescales weights, computes the norm. Throws Error.
  void finalize();
};

struct DeviationVector {
  std::vector<Rational> values;
  // Present when the vector was produced by the two-parameter construction.
  std::optional<std::pair<Rational, Rational>> special_form;  // (delta, Delta)
};

// spa_w(p) = max w(s)p(s) - min w(s)p(s); throws Error("empty instance") on n=0.
Rational weighted_span(const DeviationVector& p, const std::vector<Rational>& weights);

// (1/w)-mass of X \ S0.
Rational mu(const ElemSet& x, const ElemSet& s0, const std::vector<Rational>& weights);

// The two-parameter deviation vector: (delta+Delta)/w(s) on F*, Delta/w(s) off
// F*, clamped into [l(s), u(s)].
DeviationVector build_deviation(const Rational& delta, const Rational& Delta,
                                const ElemSet& input_solution, const std::vector<Rational>& weights,
                                const std::vector<ExtRational>& lower,
                                const std::vector<ExtRational>& upper);

// (c-p)(F*) - (c-p)(F); F* is optimal against F iff the gap is <= 0.
Rational cost_gap(const std::vector<Rational>& cost, const DeviationVector& p, const ElemSet& fstar,
                  const ElemSet& f);

// Conditions (bounds) and (optimality under every cost vector), checked with one
// oracle call per cost vector.
bool is_feasible_deviation(const Instance& inst, const DeviationVector& p, const Oracle& oracle);

Rational set_total(const ElemSet& f, const std::vector<Rational>& values);

}  // namespace invspan
