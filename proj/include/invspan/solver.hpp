#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "invspan/reduce.hpp"

namespace invspan {

// Leaf labels of the iteration body. `degenerate` terminates subproblems where
// the found bad set coincides with the input solution outside S0, so the
// positive cost gap is constant and no in-bounds deviation can close it.
enum class CaseLabel {
  c1_1, c1_2_1, c1_2_2,
  c2_1_1, c2_1_2_1, c2_1_2_2, c2_2_1, c2_2_2_1, c2_2_2_2,
  c3_1_1, c3_1_2_1, c3_1_2_2, c3_2_1, c3_2_2_1, c3_2_2_2,
  c4_1_1, c4_1_2_1, c4_1_2_2, c4_2_1, c4_2_2_1, c4_2_2_2,
  c5_1_1, c5_1_2_1, c5_1_2_2, c5_2_1, c5_2_2_1, c5_2_2_2,
  degenerate,
};

std::string to_string(CaseLabel label);
CaseLabel case_label_from_string(const std::string& text);
bool is_infeasible_label(CaseLabel label);

// A remembered bad set together with the cost index it was found under.
struct BadSet {
  ElemSet set;
  int cost_index = 0;
};

struct StepRecord {
  int iteration = 0;
  CaseLabel label = CaseLabel::c1_1;
  ElemSet found;       // F_i
  int cost_index = 0;  // active cost index
  Rational delta, Delta;
  Rational d_after, D_after;
  std::optional<BadSet> x_before, z_before;  // memory entering the step
};

struct SolveTrace {
  std::vector<StepRecord> steps;
  long oracle_calls = 0;
  std::optional<CaseLabel> infeasible_case;
  long iterations() const { return static_cast<long>(steps.size()); }
};

struct SolveOutcome {
  enum class Status { Optimal, Infeasible };
  Status status = Status::Infeasible;
  Rational d, D;
  DeviationVector deviation;  // subproblem-level two-parameter vector
  SolveTrace trace;
};

// small / equal / large classification of a family member by mu against F*.
enum class SizeClass { Small, Equal, Large };
SizeClass classify(const ElemSet& f, const SpecLUInstance& sub);

// The twelve closed-form update values. Bound parameters are the finite values
// of the corresponding SPEC-LU bound (the caller's branch guarantees
// finiteness); cost vectors are the current modified costs.
struct FContext {
  const SpecLUInstance* sub;
  Rational mu_star;
};

Rational eval_f1(const FContext& ctx, const std::vector<Rational>& c, const ElemSet& f);
Rational eval_f2(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f);
Rational eval_f3(const FContext& ctx, const std::vector<Rational>& c, const ElemSet& f);
Rational eval_f4(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f);
Rational eval_f5(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f);
Rational eval_f6(const FContext& ctx, const std::vector<Rational>& c, const Rational& D,
                 const Rational& u_out, const ElemSet& f);
Rational eval_f7(const FContext& ctx, const std::vector<Rational>& c_small, const ElemSet& small,
                 const std::vector<Rational>& c_large, const ElemSet& large);
Rational eval_f8(const FContext& ctx, const std::vector<Rational>& c_small, const ElemSet& small,
                 const Rational& f7);
Rational eval_f9(const FContext& ctx, const std::vector<Rational>& c, const Rational& D,
                 const Rational& l_out, const ElemSet& f);
Rational eval_f10(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                  const Rational& D, const Rational& l_in, const ElemSet& f);
Rational eval_f11(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                  const Rational& D, const Rational& l_in, const ElemSet& f);
Rational eval_f12(const FContext& ctx, const std::vector<Rational>& c_large, const ElemSet& large,
                  const Rational& f7);

// Initial parameters per the SPEC-LU start rule.
std::pair<Rational, Rational> initial_parameters(const SpecLUInstance& sub);

mpz_class default_iteration_cap(const Rational& inv_weight_norm);

// Runs the Newton-type loop on one SPEC-LU subproblem: minimizes d = delta sum
// subject to the corridor l_out <= D <= u_out, l_in <= d + D <= u_in and the
// oracle conditions. d equals the weighted span of the returned vector
// whenever some element (or frozen value) attains the D side, which holds for
// every subproblem the reduction builds. Per-iteration exact invariants (gap
// closure, corridor containment, delta sign, boundary pinning) are asserted on
// every step and raise InternalError when violated.
SolveOutcome solve_speclu(const SpecLUInstance& sub, const Oracle& oracle, const mpz_class& cap);

// Trace-level progress properties (equal-mu monotonicity, no repeated paired
// tuples, unpaired-step progress). Throws InternalError on violation.
void check_trace_invariants(const SolveTrace& trace, const SpecLUInstance& sub);

// Full-instance pipeline: normalize, enumerate interval pairs, solve each
// subproblem, lift, return the minimum-span result (lowest pair index on ties).
struct PipelineOutcome {
  SolveOutcome::Status status = SolveOutcome::Status::Infeasible;
  Rational d, D;
  Rational span;              // canonical weight scale
  DeviationVector deviation;  // lifted to the full instance
  SolveTrace trace;           // winning subproblem's trace
  long total_oracle_calls = 0;
  long total_iterations = 0;
  std::size_t pair_index = 0;
  std::size_t pair_count = 0;
};

struct SolveOptions {
  std::optional<mpz_class> cap;  // per-subproblem iteration cap
  int workers = 1;
  bool reversed_tie_break = false;
  std::size_t enumeration_cap = 200000;
};

PipelineOutcome solve(const Instance& inst, const SolveOptions& opts = {});
PipelineOutcome solve_multi(const Instance& inst, const SolveOptions& opts = {});

}  // namespace invspan
