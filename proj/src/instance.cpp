#include "invspan/instance.hpp"

namespace invspan {

Rational set_total(const ElemSet& f, const std::vector<Rational>& values) {
  Rational total;
  for (int s : f) total += values[s];
  return total;
}

bool Instance::unconstrained() const {
  for (int s = 0; s < n(); ++s)
    if (!lower[s].is_neg_inf() || !upper[s].is_pos_inf()) return false;
  return true;
}

void Instance::finalize() {
  const int size = n();
  if (size == 0) throw Error("empty instance");
  if (costs.empty()) throw Error("at least one cost vector required");
  for (const auto& c : costs)
    if (static_cast<int>(c.size()) != size) throw Error("cost vector size mismatch");
  if (static_cast<int>(weights.size()) != size || static_cast<int>(lower.size()) != size ||
      static_cast<int>(upper.size()) != size) {
    throw Error("weights/bounds size mismatch");
  }
  for (int s = 0; s < size; ++s) {
    if (weights[s].sign() <= 0) throw Error("weights must be positive");
    if (lower[s].is_pos_inf() || upper[s].is_neg_inf() || lower[s] > upper[s])
      throw Error("lower bound exceeds upper bound");
  }
  if (input_solution.empty()) throw Error("input_solution must be non-empty");
  for (int s : input_solution)
    if (s < 0 || s >= size) throw Error("input_solution references unknown element");
  validate_family(family, size);
  if (!contains(family, input_solution)) throw Error("input_solution is not a family member");

  // Rescale so every 1/w(s) is integral: divide the reciprocals by their
  // rational gcd. Bounds constrain p directly and are unaffected; the factor is
  // kept so spans can be reported in the original scale.
  Rational g;
  for (int s = 0; s < size; ++s) g = rational_gcd(g, weights[s].reciprocal());
  if (!(g == Rational(1))) {
    for (auto& w : weights) w = w * g;
    weight_scale = weight_scale * g;
  }
  inv_weight_norm = 0;
  for (int s = 0; s < size; ++s) inv_weight_norm += weights[s].reciprocal();
  if (!inv_weight_norm.is_integer()) throw InternalError("weight norm not integral");
}

Rational weighted_span(const DeviationVector& p, const std::vector<Rational>& weights) {
  if (p.values.empty()) throw Error("empty instance");
  Rational hi = weights[0] * p.values[0];
  Rational lo = hi;
  for (std::size_t s = 1; s < p.values.size(); ++s) {
    Rational v = weights[s] * p.values[s];
    if (v > hi) hi = v;
    if (v < lo) lo = v;
  }
  return hi - lo;
}

Rational mu(const ElemSet& x, const ElemSet& s0, const std::vector<Rational>& weights) {
  Rational total;
  for (int s : set_diff(x, s0)) total += weights[s].reciprocal();
  return total;
}

DeviationVector build_deviation(const Rational& delta, const Rational& Delta,
                                const ElemSet& input_solution, const std::vector<Rational>& weights,
                                const std::vector<ExtRational>& lower,
                                const std::vector<ExtRational>& upper) {
  DeviationVector p;
  p.values.resize(weights.size());
  const Rational sum = delta + Delta;
  for (std::size_t s = 0; s < weights.size(); ++s) {
    const Rational target =
        (set_contains(input_solution, static_cast<int>(s)) ? sum : Delta) / weights[s];
    p.values[s] = clamp(target, lower[s], upper[s]);
  }
  p.special_form = std::make_pair(delta, Delta);
  return p;
}

Rational cost_gap(const std::vector<Rational>& cost, const DeviationVector& p, const ElemSet& fstar,
                  const ElemSet& f) {
  Rational gap = set_total(fstar, cost) - set_total(f, cost);
  for (int s : set_diff(fstar, f)) gap -= p.values[s];
  for (int s : set_diff(f, fstar)) gap += p.values[s];
  return gap;
}

bool is_feasible_deviation(const Instance& inst, const DeviationVector& p, const Oracle& oracle) {
  for (int s = 0; s < inst.n(); ++s) {
    if (ExtRational(p.values[s]) < inst.lower[s] || ExtRational(p.values[s]) > inst.upper[s])
      return false;
  }
  for (const auto& c : inst.costs) {
    std::vector<Rational> modified(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) modified[s] = c[s] - p.values[s];
    const OracleResult opt = oracle(modified);
    if (opt.cost < set_total(inst.input_solution, modified)) return false;
  }
  return true;
}

}  // namespace invspan
