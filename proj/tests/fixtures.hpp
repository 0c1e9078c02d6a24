#pragma once

// Small instance builders used across the test suite.

#include <random>
#include <string>
#include <vector>

#include "invspan/io.hpp"
#include "invspan/reduce.hpp"

namespace fixtures {

struct Builder {
  int n = 0;
  std::vector<std::vector<int>> sets;           // first one is the input solution
  std::vector<std::vector<long>> costs;         // k x n
  std::vector<invspan::Rational> weights;       // empty = unit
  std::vector<invspan::ExtRational> lower, upper;

  invspan::Instance build() const {
    invspan::Instance inst;
    for (int s = 0; s < n; ++s) inst.ids.push_back("s" + std::to_string(s + 1));
    invspan::ExplicitFamily fam;
    for (const auto& raw : sets) {
      std::vector<int> zero_based;
      for (int v : raw) zero_based.push_back(v - 1);
      fam.sets.push_back(invspan::make_set(std::move(zero_based)));
    }
    inst.input_solution = fam.sets.front();
    inst.family = std::move(fam);
    for (const auto& c : costs) {
      std::vector<invspan::Rational> row;
      for (long v : c) row.push_back(invspan::Rational(v));
      inst.costs.push_back(std::move(row));
    }
    inst.weights = weights.empty()
                       ? std::vector<invspan::Rational>(n, invspan::Rational(1))
                       : weights;
    inst.lower = lower.empty()
                     ? std::vector<invspan::ExtRational>(n, invspan::ExtRational::neg_inf())
                     : lower;
    inst.upper = upper.empty()
                     ? std::vector<invspan::ExtRational>(n, invspan::ExtRational::pos_inf())
                     : upper;
    inst.finalize();
    return inst;
  }
};

// Two disjoint pairs with unit costs on the input one; the smallest nontrivial
// instance (optimal span 1).
inline invspan::Instance two_pairs() {
  Builder b;
  b.n = 4;
  b.sets = {{1, 2}, {3, 4}};
  b.costs = {{1, 1, 0, 0}};
  return b.build();
}

inline invspan::Oracle oracle_for(const invspan::Instance& inst, bool reversed = false) {
  return invspan::make_solver_oracle(inst.family, inst.input_solution, inst.weights, 1u << 20,
                                     reversed);
}

// A random SPEC-LU subproblem together with the per-element materialized
// instance (used for LP comparisons). Scalars follow the generator's rules:
// with a frozen set, l_in and u_out are pinned to zero.
struct SpecLUSample {
  invspan::Instance materialized;
  invspan::SpecLUInstance sub;
};

inline SpecLUSample random_speclu_sample(unsigned long long seed) {
  using namespace invspan;
  GenConfig config;
  config.seed = seed;
  config.n = 3 + static_cast<int>(seed % 4);
  config.family_size = 3 + static_cast<int>((seed / 3) % 8);
  config.weight_denoms = {1, 2, 3};
  config.bound_style = "unbounded";
  Instance base = generate_instance(config);

  std::mt19937_64 rng(seed * 977 + 13);
  auto pick = [&rng](long lo, long hi) {
    return static_cast<long>(lo + static_cast<long long>(
                                      rng() % static_cast<unsigned long long>(hi - lo + 1)));
  };
  ElemSet s0;
  for (int s = 0; s < base.n(); ++s)
    if (rng() % 4 == 0) s0.push_back(s);
  if (is_subset(base.input_solution, s0)) s0.clear();
  const bool frozen = !s0.empty();
  const long l_in_v = frozen ? 0 : pick(-3, 1);
  const long u_in_v = frozen ? pick(0, 3) : pick(l_in_v, 3);
  long u_out_v = frozen ? 0 : pick(-1, 1);
  if (u_out_v > u_in_v) u_out_v = u_in_v;
  long l_out_v = pick(-3, u_out_v);
  if (l_out_v > l_in_v) l_out_v = l_in_v;
  bool lo_inf = rng() % 3 == 0;
  const bool uo_inf = !frozen && rng() % 3 == 0;
  const bool li_inf = !frozen && rng() % 3 == 0;
  bool ui_inf = rng() % 3 == 0;
  if (li_inf) lo_inf = true;
  if (uo_inf) ui_inf = true;

  ExtRational l_in = li_inf ? ExtRational::neg_inf() : ExtRational(Rational(l_in_v));
  ExtRational u_in = ui_inf ? ExtRational::pos_inf() : ExtRational(Rational(u_in_v));
  ExtRational l_out = lo_inf ? ExtRational::neg_inf() : ExtRational(Rational(l_out_v));
  ExtRational u_out = uo_inf ? ExtRational::pos_inf() : ExtRational(Rational(u_out_v));
  bool any_free_off = false;
  for (int s = 0; s < base.n(); ++s)
    if (!set_contains(base.input_solution, s) && !set_contains(s0, s)) any_free_off = true;
  if (!any_free_off) {
    // No element realizes the Delta side, so the corridor must leave Delta
    // free to meet the minimum of the weighted values (0 with a frozen set,
    // Sigma itself otherwise); otherwise d stops measuring the span.
    if (frozen) {
      l_out = ExtRational::neg_inf();
      u_out = ExtRational(0);
    } else {
      l_out = l_in;
      u_out = u_in;
    }
  }

  SpecLUSample sample{base, make_speclu(base, std::move(s0), l_in, u_in, l_out, u_out)};
  sample.materialized.lower = sample.sub.element_lower();
  sample.materialized.upper = sample.sub.element_upper();
  sample.materialized.finalize();
  return sample;
}

}  // namespace fixtures
