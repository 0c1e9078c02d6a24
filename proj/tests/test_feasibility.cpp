#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "invspan/io.hpp"
#include "invspan/feasibility.hpp"
#include "invspan/verify.hpp"

using namespace invspan;

TEST_CASE("m values on the pinned two-pair instance") {
  // Both bounds pinned to zero: the single alternative gives m1 = -1.
  fixtures::Builder b;
  b.n = 4;
  b.sets = {{1, 2}, {3, 4}};
  b.costs = {{1, 1, 0, 0}};
  const Instance inst = b.build();
  const auto sub = make_speclu(inst, {}, ExtRational(0), ExtRational(0), ExtRational(0),
                               ExtRational(0));
  const MValues m = compute_m_values(sub, 1000);
  CHECK(m.m1 == ExtRational(-1));
  CHECK(m.m3 == ExtRational(-1));
  CHECK(m.m4 == ExtRational(1));
}

TEST_CASE("m values on the unbounded two-pair instance") {
  const Instance inst = fixtures::two_pairs();
  const auto sub = make_speclu(inst, {}, ExtRational::neg_inf(), ExtRational::pos_inf(),
                               ExtRational::neg_inf(), ExtRational::pos_inf());
  const MValues m = compute_m_values(sub, 1000);
  CHECK(m.m1.is_pos_inf());  // u_in is infinite, so m1 has no finite entries
  CHECK(m.m3 == ExtRational(-1));
  CHECK(m.m4 == ExtRational(1));
  CHECK(m.m3p == Rational(-1));
  CHECK(m.m4p == Rational(1));
}

TEST_CASE("empty quantifier domains give primed zeros") {
  fixtures::Builder b;
  b.n = 2;
  b.sets = {{1, 2}};
  b.costs = {{1, 1}};
  const Instance inst = b.build();
  const auto sub = make_speclu(inst, {}, ExtRational::neg_inf(), ExtRational::pos_inf(),
                               ExtRational::neg_inf(), ExtRational::pos_inf());
  const MValues m = compute_m_values(sub, 1000);
  CHECK(m.m1p == Rational(0));
  CHECK(m.m2p == Rational(0));
  CHECK(m.m3p == Rational(0));
  CHECK(m.m4p == Rational(0));
  const auto verdict = feasibility_witness(sub, fixtures::oracle_for(inst), 1000);
  CHECK(verdict.feasible);
}

TEST_CASE("witness verdicts on the hand-checked cases") {
  fixtures::Builder b;
  b.n = 4;
  b.sets = {{1, 2}, {3, 4}};
  b.costs = {{1, 1, 0, 0}};
  const Instance base = b.build();
  const Oracle oracle = fixtures::oracle_for(base);

  SUBCASE("pinned bounds are infeasible (case a)") {
    const auto sub = make_speclu(base, {}, ExtRational(0), ExtRational(0), ExtRational(0),
                                 ExtRational(0));
    const auto verdict = feasibility_witness(sub, oracle, 1000);
    CHECK_FALSE(verdict.feasible);
    CHECK(verdict.delta == Rational(0));
    CHECK(verdict.Delta == Rational(0));
  }
  SUBCASE("unconstrained is feasible through case d") {
    const auto sub = make_speclu(base, {}, ExtRational::neg_inf(), ExtRational::pos_inf(),
                                 ExtRational::neg_inf(), ExtRational::pos_inf());
    const auto verdict = feasibility_witness(sub, oracle, 1000);
    CHECK(verdict.feasible);
    CHECK(verdict.delta == Rational(2));   // m4' - m3'
    CHECK(verdict.Delta == Rational(-1));  // m3'
    REQUIRE(verdict.witness.has_value());
    CHECK(is_feasible_deviation(base, *verdict.witness, oracle));
  }
}


TEST_CASE("witness verdict agrees with the reduced LP on random instances") {
  for (unsigned long long seed = 1; seed <= 60; ++seed) {
    CAPTURE(seed);
    const auto sample = fixtures::random_speclu_sample(seed);
    const SpecLUInstance& sub = sample.sub;
    const Instance& materialized = sample.materialized;
    const Oracle oracle = fixtures::oracle_for(materialized);
    const auto verdict = feasibility_witness(sub, oracle, 100000);
    const auto lp = lp_span_reduced(materialized);
    CHECK(verdict.feasible == (lp.status == SpanResult::Status::Optimal));
    if (verdict.feasible) {
      CHECK(is_feasible_deviation(materialized, *verdict.witness, oracle));
    }
  }
}
