#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace invspan;

namespace {

SpanningTrees triangle() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }

DagPaths two_paths() {
  // a -> b -> c plus a -> c
  return {3, {{0, 1}, {1, 2}, {0, 2}}, 0, 2};
}

}  // namespace

TEST_CASE("explicit oracle with lexicographic ties") {
  ExplicitFamily fam{{{0, 1}, {2, 3}, {1, 3}}};
  const auto res = min_cost_member(fam, {0, 0, 0, 0});
  CHECK(res.set == ElemSet{0, 1});
  CHECK(res.cost == Rational(0));

  const auto expensive = min_cost_member(fam, {5, 5, 0, 0});
  CHECK(expensive.set == ElemSet{2, 3});
}

TEST_CASE("spanning tree oracle on the triangle") {
  const auto trees = enumerate_family(triangle(), 100);
  CHECK(trees.size() == 3);
  const auto res = min_cost_member(FamilyDescriptor{triangle()}, {1, 2, 3});
  CHECK(res.set == ElemSet{0, 1});
  CHECK(res.cost == Rational(3));
  // Negative costs are fine for the greedy oracle.
  const auto neg = min_cost_member(FamilyDescriptor{triangle()}, {-5, -1, -3});
  CHECK(neg.set == ElemSet{0, 2});
  CHECK(neg.cost == Rational(-8));
}

TEST_CASE("dag path enumeration and membership") {
  const auto paths = enumerate_family(FamilyDescriptor{two_paths()}, 100);
  CHECK(paths.size() == 2);
  CHECK(contains(FamilyDescriptor{two_paths()}, ElemSet{2}));
  CHECK(contains(FamilyDescriptor{two_paths()}, ElemSet{0, 1}));
  CHECK_FALSE(contains(FamilyDescriptor{two_paths()}, ElemSet{0}));
  CHECK_FALSE(contains(FamilyDescriptor{two_paths()}, ElemSet{0, 1, 2}));
}

TEST_CASE("contains for trees and explicit sets") {
  CHECK(contains(FamilyDescriptor{triangle()}, ElemSet{1, 2}));
  CHECK_FALSE(contains(FamilyDescriptor{triangle()}, ElemSet{0, 1, 2}));
  ExplicitFamily fam{{{0, 1}}};
  CHECK(contains(FamilyDescriptor{fam}, ElemSet{0, 1}));
  CHECK_FALSE(contains(FamilyDescriptor{fam}, ElemSet{}));
}

TEST_CASE("enumeration cap") {
  ExplicitFamily fam{{{0}, {1}, {2}}};
  CHECK_THROWS_AS(enumerate_family(FamilyDescriptor{fam}, 2), Error);
}

TEST_CASE("oracle agrees with enumeration on random costs") {
  std::mt19937_64 rng(3);
  std::vector<FamilyDescriptor> families;
  families.push_back(triangle());
  families.push_back(two_paths());
  families.push_back(SpanningTrees{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}});
  families.push_back(DagPaths{4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}}, 0, 3});
  for (const auto& fam : families) {
    const auto members = enumerate_family(fam, 10000);
    const int m = family_num_elements(fam);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<Rational> cost;
      for (int e = 0; e < m; ++e) cost.push_back(Rational(static_cast<long>(rng() % 21) - 10));
      const auto res = min_cost_member(fam, cost);
      Rational best = set_total(members[0], cost);
      for (const auto& f : members) best = std::min(best, set_total(f, cost));
      CHECK(res.cost == best);
      CHECK(set_total(res.set, cost) == best);
      CHECK(contains(fam, res.set));
    }
  }
}

TEST_CASE("oracle is cost-translation covariant") {
  std::mt19937_64 rng(5);
  ExplicitFamily fam{{{0, 1}, {1, 2}, {0, 3}, {2, 3}}};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> cost;
    for (int e = 0; e < 4; ++e) cost.push_back(Rational(static_cast<long>(rng() % 9) - 4));
    const Rational t(static_cast<long>(rng() % 9) - 4);
    std::vector<Rational> shifted = cost;
    for (auto& c : shifted) c += t;
    const auto a = min_cost_member(FamilyDescriptor{fam}, cost);
    const auto b = min_cost_member(FamilyDescriptor{fam}, shifted);
    CHECK(a.set == b.set);  // all members have equal size here
    CHECK(b.cost == a.cost + t * Rational(static_cast<long>(a.set.size())));
  }
}

TEST_CASE("solver oracle prefers the smaller overlap with the input solution") {
  // Cost tie between a small set overlapping the input solution and a larger
  // disjoint one: the disjoint set must win.
  fixtures::Builder b;
  b.n = 8;
  b.sets = {{1, 2, 3}, {3, 4}, {5, 6, 7, 8}};
  b.costs = {{0, 0, 2, -2, 0, 0, 0, 0}};
  const Instance inst = b.build();
  const auto res = fixtures::oracle_for(inst)({Rational(0), 0, 2, -2, 0, 0, 0, 0});
  CHECK(res.set == ElemSet{4, 5, 6, 7});
  const auto rev = fixtures::oracle_for(inst, true)({Rational(0), 0, 2, -2, 0, 0, 0, 0});
  CHECK(rev.set == ElemSet{2, 3});
}

TEST_CASE("validation rejects broken families") {
  CHECK_THROWS_AS(validate_family(SpanningTrees{4, {{0, 1}, {2, 3}}}, 2), Error);  // disconnected
  CHECK_THROWS_AS(validate_family(DagPaths{2, {{0, 1}, {1, 0}}, 0, 1}, 2), Error);  // cycle
  CHECK_THROWS_AS(validate_family(DagPaths{3, {{0, 1}}, 0, 2}, 1), Error);  // unreachable sink
  ExplicitFamily dup{{{0}, {0}}};
  CHECK_THROWS_AS(validate_family(FamilyDescriptor{dup}, 1), Error);
}
