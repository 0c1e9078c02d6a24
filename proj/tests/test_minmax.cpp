#include <doctest.h>

#include "fixtures.hpp"
#include "invspan/io.hpp"
#include "invspan/minmax.hpp"
#include "invspan/solver.hpp"

using namespace invspan;

TEST_CASE("certificate on the equal-size pair") {
  const Instance inst = fixtures::two_pairs();
  const auto cert = certificate(inst, 1000);
  CHECK(cert.omega1 == ExtRational(1));
  CHECK(cert.omega2.is_neg_inf());
  CHECK(cert.value == Rational(1));
  REQUIRE(cert.omega1_witness.has_value());
  CHECK(cert.omega1_witness->member == ElemSet{2, 3});
}

TEST_CASE("certificate value from a small/large pair") {
  fixtures::Builder b;
  b.n = 6;
  b.sets = {{1, 2}, {3, 4, 5}, {6}};
  b.costs = {{1, 1, 0, 0, 0, 0}};
  const Instance inst = b.build();
  const auto cert = certificate(inst, 1000);
  CHECK(cert.omega1.is_neg_inf());
  CHECK(cert.omega2 == ExtRational(1));
  CHECK(cert.value == Rational(1));
  REQUIRE(cert.omega2_witness.has_value());
  CHECK(cert.omega2_witness->small == ElemSet{5});
  CHECK(cert.omega2_witness->large == ElemSet{2, 3, 4});
}

TEST_CASE("singleton family certificate is zero") {
  fixtures::Builder b;
  b.n = 3;
  b.sets = {{1, 3}};
  b.costs = {{4, -2, 1}};
  const auto cert = certificate(b.build(), 1000);
  CHECK(cert.value == Rational(0));
  for (const auto& v : cert.witness.values) CHECK(v == Rational(0));
}

TEST_CASE("constrained instances are rejected") {
  fixtures::Builder b;
  b.n = 2;
  b.sets = {{1}, {2}};
  b.costs = {{0, 0}};
  b.upper = {ExtRational(1), ExtRational::pos_inf()};
  CHECK_THROWS_WITH_AS(certificate(b.build(), 1000), "certificate requires unconstrained bounds",
                       Error);
}

TEST_CASE("solver span equals the certificate on random unconstrained instances") {
  for (unsigned long long seed = 300; seed < 360; ++seed) {
    GenConfig config;
    config.seed = seed;
    config.n = 3 + static_cast<int>(seed % 4);
    config.family_size = 3 + static_cast<int>(seed % 6);
    config.weight_denoms = {1, 2};
    config.num_costs = 1 + static_cast<int>(seed % 3);
    const Instance inst = generate_instance(config);
    CAPTURE(seed);
    const auto cert = certificate(inst, 100000);
    const PipelineOutcome outcome =
        inst.k() >= 2 ? solve_multi(inst) : solve(inst);
    REQUIRE(outcome.status == SolveOutcome::Status::Optimal);
    CHECK(outcome.span == cert.value);
  }
}
