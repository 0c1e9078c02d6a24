#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace invspan;

TEST_CASE("weighted span definition") {
  DeviationVector zero{{0, 0, 0}, {}};
  CHECK(weighted_span(zero, {1, 1, 1}) == Rational(0));

  DeviationVector p{{1, 1, 0, 0, 0, 0}, {}};
  CHECK(weighted_span(p, std::vector<Rational>(6, Rational(1))) == Rational(1));

  DeviationVector q{{Rational(1, 2), Rational(-1)}, {}};
  CHECK(weighted_span(q, {Rational(2), Rational(1)}) == Rational(2));

  DeviationVector empty;
  CHECK_THROWS_AS(weighted_span(empty, {}), Error);
}

TEST_CASE("mu measure") {
  const std::vector<Rational> unit(3, Rational(1));
  CHECK(mu({}, {}, unit) == Rational(0));
  CHECK(mu({0, 1}, {}, unit) == Rational(2));
  const std::vector<Rational> w{Rational(1, 2), Rational(1, 3)};
  CHECK(mu({0, 1}, {1}, w) == Rational(2));
}

TEST_CASE("two-parameter deviation builder") {
  const std::vector<Rational> unit(4, Rational(1));
  const std::vector<ExtRational> lo(4, ExtRational::neg_inf());
  const std::vector<ExtRational> hi(4, ExtRational::pos_inf());
  auto p = build_deviation(1, 0, {0, 1}, unit, lo, hi);
  CHECK(p.values == std::vector<Rational>{1, 1, 0, 0});
  CHECK(p.special_form->first == Rational(1));

  const std::vector<Rational> unit3(3, Rational(1));
  auto q = build_deviation(0, 2, {0, 1}, unit3, std::vector<ExtRational>(3, ExtRational::neg_inf()),
                           std::vector<ExtRational>(3, ExtRational::pos_inf()));
  CHECK(q.values == std::vector<Rational>{2, 2, 2});

  auto z = build_deviation(5, -5, {0, 1}, unit3, std::vector<ExtRational>(3, ExtRational(0)),
                           std::vector<ExtRational>(3, ExtRational(0)));
  CHECK(z.values == std::vector<Rational>{0, 0, 0});
}

TEST_CASE("cost gap") {
  const Instance inst = fixtures::two_pairs();
  DeviationVector zero{std::vector<Rational>(4, Rational(0)), {}};
  const ElemSet f0{2, 3};
  CHECK(cost_gap(inst.costs[0], zero, inst.input_solution, f0) == Rational(2));
  CHECK(cost_gap(inst.costs[0], zero, inst.input_solution, inst.input_solution) == Rational(0));
  auto p = build_deviation(1, 0, inst.input_solution, inst.weights, inst.lower, inst.upper);
  CHECK(cost_gap(inst.costs[0], p, inst.input_solution, f0) == Rational(0));
}

TEST_CASE("deviation feasibility") {
  const Instance inst = fixtures::two_pairs();
  const Oracle oracle = fixtures::oracle_for(inst);
  auto p = build_deviation(1, 0, inst.input_solution, inst.weights, inst.lower, inst.upper);
  CHECK(is_feasible_deviation(inst, p, oracle));
  DeviationVector zero{std::vector<Rational>(4, Rational(0)), {}};
  CHECK_FALSE(is_feasible_deviation(inst, zero, oracle));

  fixtures::Builder pinned;
  pinned.n = 4;
  pinned.sets = {{1, 2}, {3, 4}};
  pinned.costs = {{1, 1, 0, 0}};
  pinned.lower.assign(4, ExtRational(0));
  pinned.upper.assign(4, ExtRational(0));
  const Instance fixed = pinned.build();
  CHECK_FALSE(is_feasible_deviation(fixed, zero, fixtures::oracle_for(fixed)));

  DeviationVector below{{Rational(-1), 0, 0, 0}, {}};
  CHECK_FALSE(is_feasible_deviation(fixed, below, fixtures::oracle_for(fixed)));
}

TEST_CASE("builder respects bounds for random parameters") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Rational> w;
    std::vector<ExtRational> lo, hi;
    for (int s = 0; s < n; ++s) {
      w.push_back(Rational(1, 1 + static_cast<long>(rng() % 3)));
      const long a = static_cast<long>(rng() % 11) - 5;
      const long b = a + static_cast<long>(rng() % 6);
      lo.push_back(rng() % 4 == 0 ? ExtRational::neg_inf() : ExtRational(Rational(a)));
      hi.push_back(rng() % 4 == 0 ? ExtRational::pos_inf() : ExtRational(Rational(b)));
    }
    ElemSet fstar{0};
    const Rational delta(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
    const Rational Delta(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 3));
    const auto p = build_deviation(delta, Delta, fstar, w, lo, hi);
    for (int s = 0; s < n; ++s) {
      CHECK(ExtRational(p.values[s]) >= lo[s]);
      CHECK(ExtRational(p.values[s]) <= hi[s]);
    }
    // spa(p) <= delta whenever delta >= 0 and (Delta, delta+Delta) respects
    // the necessary window: Delta below every w*u, delta+Delta above every w*l.
    if (delta.sign() >= 0) {
      bool window = true;
      for (int s = 0; s < n; ++s) {
        if (ExtRational(Delta) > w[s] * hi[s]) window = false;
        if (ExtRational(delta + Delta) < w[s] * lo[s]) window = false;
      }
      if (window) CHECK(weighted_span(p, w) <= delta);
    }
  }
}

TEST_CASE("special-form compression never increases the span") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    fixtures::Builder b;
    b.n = 4;
    b.sets = {{1, 2}, {3}, {2, 3, 4}};
    b.costs = {{static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3,
                static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 7) - 3}};
    const Instance inst = b.build();
    const Oracle oracle = fixtures::oracle_for(inst);

    DeviationVector p;
    for (int s = 0; s < 4; ++s)
      p.values.push_back(Rational(static_cast<long>(rng() % 13) - 6, 1));
    if (!is_feasible_deviation(inst, p, oracle)) continue;

    Rational hi = inst.weights[0] * p.values[0], lo = hi;
    for (int s = 1; s < 4; ++s) {
      const Rational v = inst.weights[s] * p.values[s];
      if (v > hi) hi = v;
      if (v < lo) lo = v;
    }
    const auto q = build_deviation(hi - lo, lo, inst.input_solution, inst.weights, inst.lower,
                                   inst.upper);
    CHECK(is_feasible_deviation(inst, q, oracle));
    CHECK(weighted_span(q, inst.weights) <= weighted_span(p, inst.weights));
  }
}

TEST_CASE("weight canonicalization") {
  fixtures::Builder b;
  b.n = 2;
  b.sets = {{1}, {2}};
  b.costs = {{0, 0}};
  b.weights = {Rational(2, 3), Rational(2)};
  const Instance inst = b.build();
  for (const auto& w : inst.weights) CHECK(w.reciprocal().is_integer());
  CHECK(inst.inv_weight_norm.is_integer());
  // 1/w = (3/2, 1/2) has rational gcd 1/2, so the canonical reciprocals are (3, 1).
  CHECK(inst.weights[0] == Rational(1, 3));
  CHECK(inst.weights[1] == Rational(1));
  CHECK(inst.weight_scale == Rational(1, 2));
}

TEST_CASE("instance validation failures") {
  fixtures::Builder b;
  b.n = 2;
  b.sets = {{1}, {2}};
  b.costs = {{0, 0}};
  b.weights = {Rational(0), Rational(1)};
  CHECK_THROWS_AS(b.build(), Error);

  fixtures::Builder crossed;
  crossed.n = 2;
  crossed.sets = {{1}, {2}};
  crossed.costs = {{0, 0}};
  crossed.lower.assign(2, ExtRational(1));
  crossed.upper.assign(2, ExtRational(0));
  CHECK_THROWS_AS(crossed.build(), Error);

  fixtures::Builder outsider;
  outsider.n = 2;
  outsider.sets = {{1, 2}, {2}};
  outsider.costs = {{0, 0}};
  Instance inst = outsider.build();
  inst.input_solution = {0};  // not a member
  CHECK_THROWS_AS(inst.finalize(), Error);
}
