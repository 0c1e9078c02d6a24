#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "invspan/rational.hpp"
#include "invspan/sets.hpp"

namespace invspan {

// The three kinds of feasible-solution families. Elements of the ground set are
// the listed set members (explicit) or the edges/arcs (graph kinds).
struct ExplicitFamily {
  std::vector<ElemSet> sets;
};

struct SpanningTrees {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // edges[e] = endpoints of element e
};

struct DagPaths {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> arcs;  // arcs[e] = (tail, head) of element e
  int source = 0;
  int sink = 0;
};

using FamilyDescriptor = std::variant<ExplicitFamily, SpanningTrees, DagPaths>;

struct OracleResult {
  ElemSet set;
  Rational cost;
};

// Structural validation; throws Error with a description on failure.
void validate_family(const FamilyDescriptor& fam, int num_elements);

int family_num_elements(const FamilyDescriptor& fam);

// Minimum-cost member under arbitrary (possibly negative) costs. Ties are broken
// by the lexicographically smallest sorted element-index list; for graph kinds
// the tie-break is realized through index-ordered greedy/DP choices.
OracleResult min_cost_member(const FamilyDescriptor& fam, const std::vector<Rational>& cost);

// All members in deterministic order. Throws Error("family too large to enumerate")
// past `cap` members.
std::vector<ElemSet> enumerate_family(const FamilyDescriptor& fam, std::size_t cap);

bool contains(const FamilyDescriptor& fam, const ElemSet& f);

// Solver-facing oracle. Beyond minimum cost, ties are resolved by smallest
// (1/w)-mass of the overlap with the input solution, then by the ascending
// lexicographic order of the sorted index list; `reversed` flips both secondary
// keys (used to check that optimal spans do not depend on the tie-break).
using Oracle = std::function<OracleResult(const std::vector<Rational>& cost)>;

Oracle make_solver_oracle(const FamilyDescriptor& fam, const ElemSet& input_solution,
                          const std::vector<Rational>& weights, std::size_t enumeration_cap,
                          bool reversed = false);

}  // namespace invspan
