#include "invspan/reduce.hpp"

#include <algorithm>
#include <set>

namespace invspan {
namespace {

ExtRational scaled(const Rational& w, const ExtRational& b) { return w * b; }

ExtRational unscaled(const ExtRational& v, const Rational& w) { return w.reciprocal() * v; }

}  // namespace

NormalizedInstance normalize_bounds_and_order(const Instance& inst) {
  NormalizedInstance out{inst, {}, ExtRational::neg_inf(), ExtRational::pos_inf()};
  for (int s = 0; s < inst.n(); ++s) {
    out.max_wl = std::max(out.max_wl, scaled(inst.weights[s], inst.lower[s]));
    out.min_wu = std::min(out.min_wu, scaled(inst.weights[s], inst.upper[s]));
  }
  for (int s = 0; s < inst.n(); ++s) {
    if (set_contains(inst.input_solution, s)) {
      out.instance.lower[s] = unscaled(out.max_wl, inst.weights[s]);
    } else {
      out.instance.upper[s] = unscaled(out.min_wu, inst.weights[s]);
    }
    if (out.instance.lower[s] > out.instance.upper[s]) throw Error("infeasible: bound collapse");
  }

  auto wl = [&](int s) { return scaled(inst.weights[s], out.instance.lower[s]); };
  auto wu = [&](int s) { return scaled(inst.weights[s], out.instance.upper[s]); };
  std::vector<int> in = inst.input_solution;
  std::stable_sort(in.begin(), in.end(), [&](int a, int b) { return wu(a) > wu(b); });
  std::vector<int> rest;
  for (int s = 0; s < inst.n(); ++s)
    if (!set_contains(inst.input_solution, s)) rest.push_back(s);
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return wl(a) > wl(b); });
  out.order = std::move(in);
  out.order.insert(out.order.end(), rest.begin(), rest.end());
  return out;
}

CandidateIntervals candidate_intervals(const NormalizedInstance& norm) {
  const Instance& inst = norm.instance;
  CandidateIntervals out;

  // Delta side: breakpoints are the off-F* values of w*l, walked downward from
  // the uniform off-F* upper value (= global min of w*u).
  std::set<Rational> off_breaks;
  bool off_has_neg_inf = false;
  bool any_off = false;
  for (int s = 0; s < inst.n(); ++s) {
    if (set_contains(inst.input_solution, s)) continue;
    any_off = true;
    const ExtRational v = inst.weights[s] * inst.lower[s];
    if (v.is_finite()) off_breaks.insert(v.finite());
    else off_has_neg_inf = true;
  }
  if (!any_off) {
    out.delta.push_back({ExtRational::neg_inf(), norm.min_wu});
  } else {
    ExtRational prev = norm.min_wu;
    for (auto it = off_breaks.rbegin(); it != off_breaks.rend(); ++it) {
      out.delta.push_back({ExtRational(*it), prev});
      prev = ExtRational(*it);
    }
    if (off_has_neg_inf) out.delta.push_back({ExtRational::neg_inf(), prev});
  }

  // Sum side: breakpoints are the F* values of w*u, walked upward from the
  // uniform F* lower value (= global max of w*l).
  std::set<Rational> on_breaks;
  bool on_has_pos_inf = false;
  for (int s : inst.input_solution) {
    const ExtRational v = inst.weights[s] * inst.upper[s];
    if (v.is_finite()) on_breaks.insert(v.finite());
    else on_has_pos_inf = true;
  }
  ExtRational prev = norm.max_wl;
  for (const Rational& v : on_breaks) {
    out.sum.push_back({prev, ExtRational(v)});
    prev = ExtRational(v);
  }
  if (on_has_pos_inf || out.sum.empty()) out.sum.push_back({prev, ExtRational::pos_inf()});
  return out;
}

std::vector<ExtRational> SpecLUInstance::element_lower() const {
  std::vector<ExtRational> out(ids.size());
  for (int s = 0; s < n(); ++s) {
    if (set_contains(s0, s)) out[s] = ExtRational(0);
    else if (set_contains(input_solution, s)) out[s] = weights[s].reciprocal() * l_in;
    else out[s] = weights[s].reciprocal() * l_out;
  }
  return out;
}

std::vector<ExtRational> SpecLUInstance::element_upper() const {
  std::vector<ExtRational> out(ids.size());
  for (int s = 0; s < n(); ++s) {
    if (set_contains(s0, s)) out[s] = ExtRational(0);
    else if (set_contains(input_solution, s)) out[s] = weights[s].reciprocal() * u_in;
    else out[s] = weights[s].reciprocal() * u_out;
  }
  return out;
}

DeviationVector SpecLUInstance::deviation(const Rational& delta, const Rational& Delta) const {
  ElemSet free_in = set_diff(input_solution, s0);
  DeviationVector p;
  p.values.resize(ids.size());
  const Rational sum = delta + Delta;
  for (int s = 0; s < n(); ++s) {
    if (set_contains(s0, s)) {
      p.values[s] = 0;
      continue;
    }
    const bool in = set_contains(input_solution, s);
    const ExtRational lo = weights[s].reciprocal() * (in ? l_in : l_out);
    const ExtRational hi = weights[s].reciprocal() * (in ? u_in : u_out);
    p.values[s] = clamp((in ? sum : Delta) / weights[s], lo, hi);
  }
  p.special_form = std::make_pair(delta, Delta);
  return p;
}

void SpecLUInstance::check() const {
  if (l_in > u_in || l_out > u_out) throw InternalError("spec-lu: crossed bounds");
  if (l_out > l_in) throw InternalError("spec-lu: l_out above l_in");
  if (u_out > u_in) throw InternalError("spec-lu: u_out above u_in");
  if (l_in.is_pos_inf() || u_in.is_neg_inf() || l_out.is_pos_inf() || u_out.is_neg_inf())
    throw InternalError("spec-lu: bound with the wrong infinity");
  for (int s = 0; s < n(); ++s) {
    if (!set_contains(s0, s) && !fixed_values[s].is_zero())
      throw InternalError("spec-lu: fixed value outside s0");
  }
}

SpecLUInstance build_subproblem(const NormalizedInstance& norm, const IntervalPair& pair) {
  const Instance& inst = norm.instance;
  SpecLUInstance sub;
  sub.ids = inst.ids;
  sub.family = inst.family;
  sub.input_solution = inst.input_solution;
  sub.weights = inst.weights;
  sub.fixed_values.assign(inst.n(), Rational(0));
  sub.l_in = pair.sum_interval.lo;
  sub.u_in = pair.sum_interval.hi;
  sub.l_out = pair.delta_interval.lo;
  sub.u_out = pair.delta_interval.hi;
  sub.interval = pair;
  sub.shifted_costs = inst.costs;

  for (int s = 0; s < inst.n(); ++s) {
    if (set_contains(inst.input_solution, s)) {
      // u-clamp active throughout the sum interval: freeze at the upper bound.
      if (inst.weights[s] * inst.upper[s] <= pair.sum_interval.lo) {
        sub.s0.push_back(s);
        sub.fixed_values[s] = inst.upper[s].finite();
      }
    } else if (inst.weights[s] * inst.lower[s] >= pair.delta_interval.hi) {
      sub.s0.push_back(s);
      sub.fixed_values[s] = inst.lower[s].finite();
    }
  }
  sub.s0 = make_set(sub.s0);
  for (int s : sub.s0)
    for (auto& c : sub.shifted_costs) c[s] -= sub.fixed_values[s];

  // Free elements must be clamp-free inside the cell.
  for (int s = 0; s < inst.n(); ++s) {
    if (set_contains(sub.s0, s)) continue;
    if (set_contains(inst.input_solution, s)) {
      if (inst.weights[s] * inst.upper[s] < sub.u_in)
        throw InternalError("spec-lu: free input element clamps inside cell");
      if (inst.weights[s] * inst.lower[s] > sub.l_in)
        throw InternalError("spec-lu: free input element clamps inside cell");
    } else {
      if (inst.weights[s] * inst.lower[s] > sub.l_out)
        throw InternalError("spec-lu: free outside element clamps inside cell");
      if (inst.weights[s] * inst.upper[s] < sub.u_out)
        throw InternalError("spec-lu: free outside element clamps inside cell");
    }
  }
  sub.check();
  return sub;
}

SpecLUInstance make_speclu(const Instance& inst, ElemSet s0, ExtRational l_in, ExtRational u_in,
                           ExtRational l_out, ExtRational u_out) {
  SpecLUInstance sub;
  sub.ids = inst.ids;
  sub.family = inst.family;
  sub.input_solution = inst.input_solution;
  sub.weights = inst.weights;
  sub.s0 = make_set(std::move(s0));
  sub.fixed_values.assign(inst.n(), Rational(0));
  sub.l_in = std::move(l_in);
  sub.u_in = std::move(u_in);
  sub.l_out = std::move(l_out);
  sub.u_out = std::move(u_out);
  sub.shifted_costs = inst.costs;
  sub.interval = {{sub.l_out, sub.u_out}, {sub.l_in, sub.u_in}};
  sub.check();
  return sub;
}

DeviationVector lift_solution(const SpecLUInstance& sub, const Instance& original,
                              const Rational& d, const Rational& D) {
  DeviationVector p = sub.deviation(d, D);
  for (int s : sub.s0) p.values[s] = sub.fixed_values[s];
  for (int s = 0; s < original.n(); ++s) {
    if (ExtRational(p.values[s]) < original.lower[s] || ExtRational(p.values[s]) > original.upper[s])
      throw InternalError("lifted deviation violates original bounds");
  }
  return p;
}

}  // namespace invspan
