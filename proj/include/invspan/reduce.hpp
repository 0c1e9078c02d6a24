#pragma once

#include <vector>

#include "invspan/instance.hpp"

namespace invspan {

struct Interval {
  ExtRational lo;
  ExtRational hi;
};

// One candidate cell: Delta ranges over delta_interval, delta+Delta over
// sum_interval.
struct IntervalPair {
  Interval delta_interval;
  Interval sum_interval;
};

// Replaces w(s)l(s) on F* by the global max of w*l and w(s)u(s) off F* by the
// global min of w*u, then records an element order along which both bound
// chains are monotone. Throws Error("infeasible: bound collapse") when the
// replacement produces l(s) > u(s).
struct NormalizedInstance {
  Instance instance;        // bounds replaced; element indices unchanged
  std::vector<int> order;   // F* first by decreasing w*u, then rest by decreasing w*l
  ExtRational max_wl;       // global max of w(s)l(s) (original bounds)
  ExtRational min_wu;       // global min of w(s)u(s)
};

NormalizedInstance normalize_bounds_and_order(const Instance& inst);

// The candidate interval families for Delta and delta+Delta. Consecutive
// intervals share endpoints; both cells are searched.
struct CandidateIntervals {
  std::vector<Interval> delta;  // for Delta
  std::vector<Interval> sum;    // for delta+Delta
};

CandidateIntervals candidate_intervals(const NormalizedInstance& norm);

// A subproblem with frozen elements absorbed into the costs and uniform scaled
// bounds: free F* elements live in [l_in/w, u_in/w], free off-F* elements in
// [l_out/w, u_out/w], frozen elements are fixed (their deviation moved into the
// cost shift, so they behave as if bounded by [0, 0]).
struct SpecLUInstance {
  std::vector<std::string> ids;
  FamilyDescriptor family;
  ElemSet input_solution;
  std::vector<Rational> weights;
  ElemSet s0;                                // frozen elements
  std::vector<Rational> fixed_values;        // size n; nonzero only on s0
  ExtRational l_in, u_in, l_out, u_out;
  std::vector<std::vector<Rational>> shifted_costs;
  IntervalPair interval;                     // provenance

  int n() const { return static_cast<int>(ids.size()); }
  int k() const { return static_cast<int>(shifted_costs.size()); }
  Rational mu_of(const ElemSet& x) const { return mu(x, s0, weights); }

  // Per-element bounds of the subproblem in deviation space (0 on s0).
  std::vector<ExtRational> element_lower() const;
  std::vector<ExtRational> element_upper() const;

  // The subproblem's two-parameter deviation vector.
  DeviationVector deviation(const Rational& delta, const Rational& Delta) const;

  // Structural invariants; throws InternalError on violation.
  void check() const;
};

SpecLUInstance build_subproblem(const NormalizedInstance& norm, const IntervalPair& pair);

// A SPEC-LU shaped problem given directly (no freeze provenance).
SpecLUInstance make_speclu(const Instance& inst, ElemSet s0, ExtRational l_in, ExtRational u_in,
                           ExtRational l_out, ExtRational u_out);

// Full-instance vector for a subproblem solution: frozen elements take their
// fixed values, free elements the two-parameter clamp. Verifies the original
// bounds hold.
DeviationVector lift_solution(const SpecLUInstance& sub, const Instance& original,
                              const Rational& d, const Rational& D);

}  // namespace invspan
