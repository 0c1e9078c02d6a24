#pragma once

#include <optional>
#include <string>

#include "invspan/solver.hpp"

namespace invspan {

// Exact LP: minimize objective . y subject to rows . y >= rhs, y free.
// Solved by a two-phase primal simplex with Bland's rule over rationals.
struct LinearProgram {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;
  std::vector<bool> equality;  // row i is == instead of >=
};

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational objective;
  std::vector<Rational> point;
};

LpSolution solve_lp(const LinearProgram& lp);

// Brute-force reference for tiny LPs: enumerates square subsystems of tight
// rows. Only used by tests to certify solve_lp; requires a pointed feasible
// region.
LpSolution solve_lp_by_vertex_enumeration(const LinearProgram& lp);

struct SpanResult {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  Rational span;  // canonical weight scale
  std::optional<DeviationVector> deviation;
  std::optional<std::pair<Rational, Rational>> parameters;  // (d, D) when reduced
};

// Full-vector LP over (p, t_max, t_min): one constraint per (member, cost
// index), span rows, finite bounds. Exponential in nothing but exact; guarded
// to small ground sets.
SpanResult lp_span_full(const Instance& inst, int max_n = 6,
                        std::size_t enumeration_cap = 200000);

// Two-variable LP in (x = Delta, y = delta+Delta) per interval pair, clamps
// resolved to linear forms inside each pair; solved exactly by enumerating
// line intersections.
SpanResult lp_span_reduced(const Instance& inst, std::size_t enumeration_cap = 200000);

struct VerifyReport {
  bool match = true;
  std::string detail;
  SpanResult reduced;
  std::optional<SpanResult> full;
};

// Compares a solver outcome against the independent verifiers (always the
// reduced LP; also the full LP when the instance is small enough) and checks
// the returned deviation vector's feasibility and span.
VerifyReport cross_check(const Instance& inst, const PipelineOutcome& outcome,
                         std::size_t enumeration_cap = 200000);

}  // namespace invspan
