#include "invspan/solver.hpp"

#include <atomic>
#include <future>
#include <map>
#include <thread>

namespace invspan {
namespace {

const std::map<CaseLabel, std::string>& label_names() {
  static const std::map<CaseLabel, std::string> names = {
      {CaseLabel::c1_1, "1.1"},         {CaseLabel::c1_2_1, "1.2.1"},
      {CaseLabel::c1_2_2, "1.2.2"},     {CaseLabel::c2_1_1, "2.1.1"},
      {CaseLabel::c2_1_2_1, "2.1.2.1"}, {CaseLabel::c2_1_2_2, "2.1.2.2"},
      {CaseLabel::c2_2_1, "2.2.1"},     {CaseLabel::c2_2_2_1, "2.2.2.1"},
      {CaseLabel::c2_2_2_2, "2.2.2.2"}, {CaseLabel::c3_1_1, "3.1.1"},
      {CaseLabel::c3_1_2_1, "3.1.2.1"}, {CaseLabel::c3_1_2_2, "3.1.2.2"},
      {CaseLabel::c3_2_1, "3.2.1"},     {CaseLabel::c3_2_2_1, "3.2.2.1"},
      {CaseLabel::c3_2_2_2, "3.2.2.2"}, {CaseLabel::c4_1_1, "4.1.1"},
      {CaseLabel::c4_1_2_1, "4.1.2.1"}, {CaseLabel::c4_1_2_2, "4.1.2.2"},
      {CaseLabel::c4_2_1, "4.2.1"},     {CaseLabel::c4_2_2_1, "4.2.2.1"},
      {CaseLabel::c4_2_2_2, "4.2.2.2"}, {CaseLabel::c5_1_1, "5.1.1"},
      {CaseLabel::c5_1_2_1, "5.1.2.1"}, {CaseLabel::c5_1_2_2, "5.1.2.2"},
      {CaseLabel::c5_2_1, "5.2.1"},     {CaseLabel::c5_2_2_1, "5.2.2.1"},
      {CaseLabel::c5_2_2_2, "5.2.2.2"}, {CaseLabel::degenerate, "degenerate"},
  };
  return names;
}

Rational finite_or_throw(const ExtRational& v, const char* what) {
  if (!v.is_finite()) throw InternalError(std::string("expected finite bound: ") + what);
  return v.finite();
}

}  // namespace

std::string to_string(CaseLabel label) { return label_names().at(label); }

CaseLabel case_label_from_string(const std::string& text) {
  for (const auto& [label, name] : label_names())
    if (name == text) return label;
  throw Error("unknown case label: '" + text + "'");
}

bool is_infeasible_label(CaseLabel label) {
  switch (label) {
    case CaseLabel::c1_2_2:
    case CaseLabel::c2_1_2_2:
    case CaseLabel::c2_2_2_2:
    case CaseLabel::c3_1_2_2:
    case CaseLabel::c3_2_2_2:
    case CaseLabel::c4_1_2_2:
    case CaseLabel::c4_2_2_2:
    case CaseLabel::c5_1_2_2:
    case CaseLabel::c5_2_2_2:
    case CaseLabel::degenerate:
      return true;
    default:
      return false;
  }
}

SizeClass classify(const ElemSet& f, const SpecLUInstance& sub) {
  const Rational mf = sub.mu_of(f);
  const Rational ms = sub.mu_of(sub.input_solution);
  if (mf < ms) return SizeClass::Small;
  if (mf > ms) return SizeClass::Large;
  return SizeClass::Equal;
}

namespace {

Rational gap_over(const std::vector<Rational>& c, const ElemSet& fstar, const ElemSet& f) {
  return set_total(fstar, c) - set_total(f, c);
}

}  // namespace

Rational eval_f1(const FContext& ctx, const std::vector<Rational>& c, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(ctx.sub->input_solution, f));
  if (den.is_zero()) throw InternalError("f1: degenerate pair");
  return gap_over(c, ctx.sub->input_solution, f) / den;
}

Rational eval_f2(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f) {
  return u_in - d - D - eval_f1(ctx, c, f);
}

Rational eval_f3(const FContext& ctx, const std::vector<Rational>& c, const ElemSet& f) {
  const Rational den = ctx.mu_star - ctx.sub->mu_of(f);
  if (den.is_zero()) throw InternalError("f3: equal mu");
  return gap_over(c, ctx.sub->input_solution, f) / den;
}

Rational eval_f4(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(f, ctx.sub->input_solution));
  if (den.is_zero()) throw InternalError("f4: degenerate pair");
  const Rational head = ctx.sub->mu_of(set_diff(ctx.sub->input_solution, f));
  return (-gap_over(c, ctx.sub->input_solution, f) + (u_in - d - D) * head) / den;
}

Rational eval_f5(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                 const Rational& D, const Rational& u_in, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(f, ctx.sub->input_solution));
  if (den.is_zero()) throw InternalError("f5: degenerate pair");
  return (gap_over(c, ctx.sub->input_solution, f) -
          (u_in - d - D) * (ctx.mu_star - ctx.sub->mu_of(f))) /
         den;
}

Rational eval_f6(const FContext& ctx, const std::vector<Rational>& c, const Rational& D,
                 const Rational& u_out, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(ctx.sub->input_solution, f));
  if (den.is_zero()) throw InternalError("f6: degenerate pair");
  return (gap_over(c, ctx.sub->input_solution, f) -
          (u_out - D) * (ctx.mu_star - ctx.sub->mu_of(f))) /
         den;
}

Rational eval_f7(const FContext& ctx, const std::vector<Rational>& c_small, const ElemSet& small,
                 const std::vector<Rational>& c_large, const ElemSet& large) {
  const ElemSet& fstar = ctx.sub->input_solution;
  const Rational ds = ctx.mu_star - ctx.sub->mu_of(small);   // > 0
  const Rational dl = ctx.mu_star - ctx.sub->mu_of(large);   // < 0
  const Rational num = gap_over(c_small, fstar, small) / ds - gap_over(c_large, fstar, large) / dl;
  const Rational den =
      ctx.sub->mu_of(set_diff(fstar, small)) / ds - ctx.sub->mu_of(set_diff(fstar, large)) / dl;
  if (den.sign() <= 0) throw InternalError("f7: nonpositive denominator");
  return num / den;
}

Rational eval_f8(const FContext& ctx, const std::vector<Rational>& c_small, const ElemSet& small,
                 const Rational& f7) {
  const ElemSet& fstar = ctx.sub->input_solution;
  return (gap_over(c_small, fstar, small) - f7 * ctx.sub->mu_of(set_diff(fstar, small))) /
         (ctx.mu_star - ctx.sub->mu_of(small));
}

Rational eval_f9(const FContext& ctx, const std::vector<Rational>& c, const Rational& D,
                 const Rational& l_out, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(ctx.sub->input_solution, f));
  if (den.is_zero()) throw InternalError("f9: degenerate pair");
  return (gap_over(c, ctx.sub->input_solution, f) -
          (l_out - D) * (ctx.mu_star - ctx.sub->mu_of(f))) /
         den;
}

Rational eval_f10(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                  const Rational& D, const Rational& l_in, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(f, ctx.sub->input_solution));
  if (den.is_zero()) throw InternalError("f10: degenerate pair");
  const Rational head = ctx.sub->mu_of(set_diff(ctx.sub->input_solution, f));
  return (-gap_over(c, ctx.sub->input_solution, f) + (l_in - d - D) * head) / den;
}

Rational eval_f11(const FContext& ctx, const std::vector<Rational>& c, const Rational& d,
                  const Rational& D, const Rational& l_in, const ElemSet& f) {
  const Rational den = ctx.sub->mu_of(set_diff(f, ctx.sub->input_solution));
  if (den.is_zero()) throw InternalError("f11: degenerate pair");
  return (gap_over(c, ctx.sub->input_solution, f) -
          (l_in - d - D) * (ctx.mu_star - ctx.sub->mu_of(f))) /
         den;
}

Rational eval_f12(const FContext& ctx, const std::vector<Rational>& c_large, const ElemSet& large,
                  const Rational& f7) {
  const ElemSet& fstar = ctx.sub->input_solution;
  return (gap_over(c_large, fstar, large) - f7 * ctx.sub->mu_of(set_diff(fstar, large))) /
         (ctx.mu_star - ctx.sub->mu_of(large));
}

std::pair<Rational, Rational> initial_parameters(const SpecLUInstance& sub) {
  Rational delta0 = 0;
  if (sub.l_in.is_finite() && sub.u_out.is_finite()) {
    const Rational diff = sub.l_in.finite() - sub.u_out.finite();
    if (diff.sign() > 0) delta0 = diff;
  }
  Rational Delta0 = 0;
  if (sub.u_out.is_finite()) Delta0 = sub.u_out.finite();
  else if (sub.l_in.is_finite()) Delta0 = sub.l_in.finite();
  return {delta0, Delta0};
}

mpz_class default_iteration_cap(const Rational& inv_weight_norm) {
  if (!inv_weight_norm.is_integer()) throw InternalError("weight norm not integral");
  mpz_class norm = inv_weight_norm.num();
  mpz_class cap;
  mpz_pow_ui(cap.get_mpz_t(), norm.get_mpz_t(), 6);
  return 64 * cap + 64;
}

namespace {

struct StepDecision {
  CaseLabel label;
  Rational delta, Delta;                       // meaningful unless infeasible
  std::optional<BadSet> x_after, z_after;      // memory after the step
  bool sets_y = false;                         // Case 1 replaces Y by F_i
};

// One evaluation of the iteration body, pure in the state.
StepDecision decide_step(const SpecLUInstance& sub,
                         const std::vector<std::vector<Rational>>& modified, const ElemSet& found,
                         int j, const Rational& d, const Rational& D,
                         const std::optional<BadSet>& x_mem, const std::optional<BadSet>& z_mem) {
  const FContext ctx{&sub, sub.mu_of(sub.input_solution)};
  const std::vector<Rational>& c = modified[j];
  const ElemSet& fstar = sub.input_solution;
  const Rational sum = d + D;
  const SizeClass size = classify(found, sub);

  auto fits_low = [](const ExtRational& bound, const Rational& v) {  // v >= bound
    return ExtRational(v) >= bound;
  };
  auto fits_high = [](const ExtRational& bound, const Rational& v) {  // v <= bound
    return ExtRational(v) <= bound;
  };

  // The f4/f5 (and f9) branches require a nonempty scaled difference; checked
  // before the division, exactly as the pseudocode orders the conditions.
  auto small_escape = [&](CaseLabel ok, CaseLabel bad, std::optional<BadSet> x_after,
                          std::optional<BadSet> z_after) -> StepDecision {
    if (!is_subset(set_diff(found, sub.s0), set_diff(fstar, sub.s0))) {
      const Rational u_in = finite_or_throw(sub.u_in, "u_in");
      const Rational f4 = eval_f4(ctx, c, d, D, u_in, found);
      if (fits_low(sub.l_out, D + f4)) {
        return {ok, eval_f5(ctx, c, d, D, u_in, found), f4, std::move(x_after), std::move(z_after)};
      }
    }
    return {bad, {}, {}, std::move(x_after), std::move(z_after)};
  };
  auto large_escape = [&](CaseLabel ok, CaseLabel bad, std::optional<BadSet> x_after,
                          std::optional<BadSet> z_after) -> StepDecision {
    if (!is_subset(set_diff(fstar, sub.s0), set_diff(found, sub.s0))) {
      const Rational l_out = finite_or_throw(sub.l_out, "l_out");
      const Rational f9 = eval_f9(ctx, c, D, l_out, found);
      if (fits_high(sub.u_in - sub.l_out, d + f9)) {
        return {ok, f9, l_out - D, std::move(x_after), std::move(z_after)};
      }
    }
    return {bad, {}, {}, std::move(x_after), std::move(z_after)};
  };

  if (size == SizeClass::Equal) {
    StepDecision dec;
    dec.sets_y = true;  // X and Z are dropped, Y becomes F_i
    if (sub.mu_of(set_diff(fstar, found)).is_zero()) {
      dec.label = CaseLabel::degenerate;
      return dec;
    }
    const Rational f1 = eval_f1(ctx, c, found);
    if (fits_high(sub.u_in, sum + f1)) {
      dec.label = CaseLabel::c1_1;
      dec.delta = f1;
      dec.Delta = 0;
      return dec;
    }
    const Rational f2 = eval_f2(ctx, c, d, D, finite_or_throw(sub.u_in, "u_in"), found);
    if (fits_low(sub.l_out, D + f2)) {
      dec.label = CaseLabel::c1_2_1;
      dec.delta = f1;
      dec.Delta = f2;
      return dec;
    }
    dec.label = CaseLabel::c1_2_2;
    return dec;
  }

  if (size == SizeClass::Small) {
    const BadSet self{found, j};
    if (!z_mem) {
      const Rational f3 = eval_f3(ctx, c, found);
      if (fits_high(sub.u_out, D + f3)) {
        if (fits_high(sub.u_in, sum + f3)) return {CaseLabel::c2_1_1, 0, f3, self, z_mem};
        return small_escape(CaseLabel::c2_1_2_1, CaseLabel::c2_1_2_2, self, z_mem);
      }
      const Rational f6 = eval_f6(ctx, c, D, finite_or_throw(sub.u_out, "u_out"), found);
      if (fits_high(sub.u_in - sub.u_out, d + f6)) {
        return {CaseLabel::c2_2_1, f6, sub.u_out.finite() - D, self, z_mem};
      }
      return small_escape(CaseLabel::c2_2_2_1, CaseLabel::c2_2_2_2, self, z_mem);
    }
    const Rational f7 = eval_f7(ctx, c, found, modified[z_mem->cost_index], z_mem->set);
    const Rational f8 = eval_f8(ctx, c, found, f7);
    if (fits_high(sub.u_out, D + f8)) {
      if (fits_high(sub.u_in, sum + f7 + f8)) {
        return {CaseLabel::c3_1_1, f7, f8, self, z_mem};  // keeps Z
      }
      return small_escape(CaseLabel::c3_1_2_1, CaseLabel::c3_1_2_2, self, std::nullopt);
    }
    const Rational f6 = eval_f6(ctx, c, D, finite_or_throw(sub.u_out, "u_out"), found);
    if (fits_high(sub.u_in - sub.u_out, d + f6)) {
      return {CaseLabel::c3_2_1, f6, sub.u_out.finite() - D, self, std::nullopt};
    }
    return small_escape(CaseLabel::c3_2_2_1, CaseLabel::c3_2_2_2, self, std::nullopt);
  }

  // Large.
  const BadSet self{found, j};
  if (!x_mem) {
    const Rational f3 = eval_f3(ctx, c, found);
    if (fits_low(sub.l_in, sum + f3)) {
      if (fits_low(sub.l_out, D + f3)) return {CaseLabel::c4_1_1, 0, f3, x_mem, self};
      return large_escape(CaseLabel::c4_1_2_1, CaseLabel::c4_1_2_2, x_mem, self);
    }
    const Rational f10 = eval_f10(ctx, c, d, D, finite_or_throw(sub.l_in, "l_in"), found);
    if (fits_low(sub.l_out, D + f10)) {
      return {CaseLabel::c4_2_1, eval_f11(ctx, c, d, D, sub.l_in.finite(), found), f10, x_mem, self};
    }
    return large_escape(CaseLabel::c4_2_2_1, CaseLabel::c4_2_2_2, x_mem, self);
  }
  const Rational f7 = eval_f7(ctx, modified[x_mem->cost_index], x_mem->set, c, found);
  const Rational f12 = eval_f12(ctx, c, found, f7);
  if (fits_low(sub.l_in, sum + f7 + f12)) {
    if (fits_low(sub.l_out, D + f12)) {
      return {CaseLabel::c5_1_1, f7, f12, x_mem, self};  // keeps X
    }
    return large_escape(CaseLabel::c5_1_2_1, CaseLabel::c5_1_2_2, std::nullopt, self);
  }
  const Rational f10 = eval_f10(ctx, c, d, D, finite_or_throw(sub.l_in, "l_in"), found);
  if (fits_low(sub.l_out, D + f10)) {
    return {CaseLabel::c5_2_1, eval_f11(ctx, c, d, D, sub.l_in.finite(), found), f10,
            std::nullopt, self};
  }
  return large_escape(CaseLabel::c5_2_2_1, CaseLabel::c5_2_2_2, std::nullopt, self);
}

void check_corridor(const SpecLUInstance& sub, const Rational& d, const Rational& D) {
  if (ExtRational(d + D) < sub.l_in || ExtRational(d + D) > sub.u_in)
    throw InternalError("corridor violated: d+D outside [l_in, u_in]");
  if (ExtRational(D) < sub.l_out || ExtRational(D) > sub.u_out)
    throw InternalError("corridor violated: D outside [l_out, u_out]");
}

void check_step_invariants(const SpecLUInstance& sub,
                           const std::vector<std::vector<Rational>>& fresh_modified,
                           const StepRecord& step, const std::optional<BadSet>& x_after,
                           const std::optional<BadSet>& z_after) {
  // delta sign rule: zero exactly in 2.1.1/4.1.1, where Delta is signed.
  const bool zero_delta_case =
      step.label == CaseLabel::c2_1_1 || step.label == CaseLabel::c4_1_1;
  if (step.delta.sign() < 0) throw InternalError("negative delta step");
  if (zero_delta_case != step.delta.is_zero())
    throw InternalError("delta zero/nonzero does not match the case");
  if (step.label == CaseLabel::c2_1_1 && step.Delta.sign() <= 0)
    throw InternalError("2.1.1 requires Delta > 0");
  if (step.label == CaseLabel::c4_1_1 && step.Delta.sign() >= 0)
    throw InternalError("4.1.1 requires Delta < 0");

  check_corridor(sub, step.d_after, step.D_after);

  // Boundary pinning after the clamped cases.
  const Rational sum = step.d_after + step.D_after;
  switch (step.label) {
    case CaseLabel::c2_1_2_1:
    case CaseLabel::c2_2_2_1:
    case CaseLabel::c3_1_2_1:
    case CaseLabel::c3_2_2_1:
      if (!(ExtRational(sum) == sub.u_in)) throw InternalError("d+D not pinned to u_in");
      break;
    case CaseLabel::c4_2_1:
    case CaseLabel::c5_2_1:
      if (!(ExtRational(sum) == sub.l_in)) throw InternalError("d+D not pinned to l_in");
      break;
    default:
      break;
  }

  // Gap closure on the eliminated set(s).
  auto gap = [&](int j, const ElemSet& f) {
    return gap_over(fresh_modified[j], sub.input_solution, f);
  };
  if (!gap(step.cost_index, step.found).is_zero())
    throw InternalError("cost gap not closed on the eliminated set");
  if (step.label == CaseLabel::c3_1_1 && !gap(z_after->cost_index, z_after->set).is_zero())
    throw InternalError("cost gap not closed on the paired large set");
  if (step.label == CaseLabel::c5_1_1 && !gap(x_after->cost_index, x_after->set).is_zero())
    throw InternalError("cost gap not closed on the paired small set");
}

std::vector<std::vector<Rational>> modified_costs(const SpecLUInstance& sub,
                                                  const DeviationVector& p) {
  std::vector<std::vector<Rational>> out(sub.shifted_costs.size());
  for (int j = 0; j < sub.k(); ++j) {
    out[j].resize(p.values.size());
    for (std::size_t s = 0; s < p.values.size(); ++s)
      out[j][s] = sub.shifted_costs[j][s] - p.values[s];
  }
  return out;
}

}  // namespace

SolveOutcome solve_speclu(const SpecLUInstance& sub, const Oracle& oracle, const mpz_class& cap) {
  SolveOutcome out;
  auto [d, D] = initial_parameters(sub);
  check_corridor(sub, d, D);
  std::optional<BadSet> x_mem, z_mem;

  for (mpz_class iter = 0;; ++iter) {
    DeviationVector p = sub.deviation(d, D);
    const auto modified = modified_costs(sub, p);

    // Scan the cost functions in order; the first violated one is processed.
    int active = -1;
    ElemSet found;
    for (int j = 0; j < sub.k(); ++j) {
      const OracleResult res = oracle(modified[j]);
      ++out.trace.oracle_calls;
      if (set_total(sub.input_solution, modified[j]) > res.cost) {
        active = j;
        found = res.set;
        break;
      }
    }
    if (active < 0) {
      out.status = SolveOutcome::Status::Optimal;
      out.d = d;
      out.D = D;
      out.deviation = std::move(p);
      return out;
    }
    if (iter >= cap) throw Error("iteration cap exceeded");

    StepDecision dec = decide_step(sub, modified, found, active, d, D, x_mem, z_mem);
    if (is_infeasible_label(dec.label)) {
      out.status = SolveOutcome::Status::Infeasible;
      out.trace.infeasible_case = dec.label;
      StepRecord step;
      step.iteration = static_cast<int>(out.trace.steps.size());
      step.label = dec.label;
      step.found = found;
      step.cost_index = active;
      step.x_before = x_mem;
      step.z_before = z_mem;
      step.d_after = d;
      step.D_after = D;
      out.trace.steps.push_back(std::move(step));
      return out;
    }

    StepRecord step;
    step.iteration = static_cast<int>(out.trace.steps.size());
    step.label = dec.label;
    step.found = found;
    step.cost_index = active;
    step.delta = dec.delta;
    step.Delta = dec.Delta;
    step.x_before = x_mem;
    step.z_before = z_mem;
    d += dec.delta;
    D += dec.Delta;
    step.d_after = d;
    step.D_after = D;

    if (dec.sets_y) {
      x_mem.reset();
      z_mem.reset();
    } else {
      x_mem = dec.x_after;
      z_mem = dec.z_after;
    }
    check_step_invariants(sub, modified_costs(sub, sub.deviation(d, D)), step, x_mem, z_mem);
    out.trace.steps.push_back(std::move(step));
  }
}

void check_trace_invariants(const SolveTrace& trace, const SpecLUInstance& sub) {
  auto mu_of = [&](const ElemSet& f) { return sub.mu_of(f); };
  const Rational mu_star = mu_of(sub.input_solution);

  // Equal-mu eliminations strictly grow the overlap with the input solution.
  std::optional<Rational> last_equal_overlap;
  for (const auto& step : trace.steps) {
    if (step.label != CaseLabel::c1_1 && step.label != CaseLabel::c1_2_1) continue;
    const Rational overlap = mu_of(set_intersect(step.found, sub.input_solution));
    if (last_equal_overlap && !(*last_equal_overlap < overlap))
      throw InternalError("equal-mu overlap did not increase");
    last_equal_overlap = overlap;
  }

  // No repeated mu-tuple among paired small (resp. large) steps.
  std::vector<std::vector<Rational>> small_tuples, large_tuples;
  for (const auto& step : trace.steps) {
    if (is_infeasible_label(step.label)) continue;
    const Rational mf = mu_of(step.found);
    if (mf < mu_star && step.z_before) {
      std::vector<Rational> t{mf, mu_of(step.z_before->set),
                              mu_of(set_intersect(step.found, sub.input_solution)),
                              mu_of(set_intersect(step.z_before->set, sub.input_solution))};
      for (const auto& seen : small_tuples)
        if (seen == t) throw InternalError("repeated paired-small mu tuple");
      small_tuples.push_back(std::move(t));
    } else if (mf > mu_star && step.x_before) {
      std::vector<Rational> t{mu_of(step.x_before->set), mf,
                              mu_of(set_intersect(step.x_before->set, sub.input_solution)),
                              mu_of(set_intersect(step.found, sub.input_solution))};
      for (const auto& seen : large_tuples)
        if (seen == t) throw InternalError("repeated paired-large mu tuple");
      large_tuples.push_back(std::move(t));
    }
  }

  // Consecutive unpaired small (resp. large) steps make measurable progress.
  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    const auto& a = trace.steps[i];
    const auto& b = trace.steps[i + 1];
    if (is_infeasible_label(a.label) || is_infeasible_label(b.label)) continue;
    const Rational ma = mu_of(a.found), mb = mu_of(b.found);
    const bool small_pair = ma < mu_star && mb < mu_star && !a.z_before && !b.z_before;
    const bool large_pair = ma > mu_star && mb > mu_star && !a.x_before && !b.x_before;
    if (!small_pair && !large_pair) continue;
    if (ma != mb) continue;
    const Rational oa = mu_of(set_intersect(a.found, sub.input_solution));
    const Rational ob = mu_of(set_intersect(b.found, sub.input_solution));
    if (!(oa < ob)) throw InternalError("consecutive unpaired steps made no progress");
  }
}

namespace {

PipelineOutcome solve_pipeline(const Instance& inst, const SolveOptions& opts) {
  const NormalizedInstance norm = normalize_bounds_and_order(inst);
  const CandidateIntervals cells = candidate_intervals(norm);
  const Oracle oracle = make_solver_oracle(inst.family, inst.input_solution, inst.weights,
                                           opts.enumeration_cap, opts.reversed_tie_break);
  const mpz_class cap = opts.cap ? *opts.cap : default_iteration_cap(inst.inv_weight_norm);

  std::vector<IntervalPair> pairs;
  for (const auto& dv : cells.delta)
    for (const auto& sv : cells.sum) pairs.push_back({dv, sv});

  struct CellResult {
    SolveOutcome outcome;
    SpecLUInstance sub;
  };
  std::vector<std::optional<CellResult>> results(pairs.size());

  auto run_cell = [&](std::size_t i) {
    SpecLUInstance sub = build_subproblem(norm, pairs[i]);
    SolveOutcome outcome = solve_speclu(sub, oracle, cap);
    results[i] = CellResult{std::move(outcome), std::move(sub)};
  };

  const int workers = std::max(1, opts.workers);
  if (workers == 1 || pairs.size() <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) run_cell(i);
  } else {
    std::vector<std::future<void>> futures;
    std::atomic<std::size_t> next{0};
    const std::size_t thread_count = std::min(static_cast<std::size_t>(workers), pairs.size());
    for (std::size_t t = 0; t < thread_count; ++t) {
      futures.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1)) run_cell(i);
      }));
    }
    for (auto& f : futures) f.get();  // rethrows worker exceptions
  }

  PipelineOutcome best;
  best.pair_count = pairs.size();
  std::optional<std::size_t> winner;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& cell = *results[i];
    best.total_oracle_calls += cell.outcome.trace.oracle_calls;
    best.total_iterations += cell.outcome.trace.iterations();
    if (cell.outcome.status != SolveOutcome::Status::Optimal) continue;
    if (!winner || cell.outcome.d < best.span) {
      winner = i;
      best.span = cell.outcome.d;
    }
  }
  if (!winner) {
    best.status = SolveOutcome::Status::Infeasible;
    // keep the first cell's trace for diagnostics
    if (!results.empty()) best.trace = results[0]->outcome.trace;
    return best;
  }
  const auto& win = *results[*winner];
  best.status = SolveOutcome::Status::Optimal;
  best.d = win.outcome.d;
  best.D = win.outcome.D;
  best.pair_index = *winner;
  best.trace = win.outcome.trace;
  best.deviation = lift_solution(win.sub, inst, win.outcome.d, win.outcome.D);
  best.deviation.special_form = std::make_pair(win.outcome.d, win.outcome.D);
  return best;
}

}  // namespace

PipelineOutcome solve(const Instance& inst, const SolveOptions& opts) {
  if (inst.k() != 1) throw Error("solve requires exactly one cost vector");
  return solve_pipeline(inst, opts);
}

PipelineOutcome solve_multi(const Instance& inst, const SolveOptions& opts) {
  if (inst.k() < 2) throw Error("solve_multi requires at least two cost vectors");
  return solve_pipeline(inst, opts);
}

}  // namespace invspan
