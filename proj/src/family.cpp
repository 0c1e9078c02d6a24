#include "invspan/family.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace invspan {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int root(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = root(a);
    b = root(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

// Lexicographically ordered (primary, secondary) edge key; sums of keys compare
// the same way for every sufficiently small positive weighting of the secondary.
struct PairKey {
  Rational primary;
  Rational secondary;
  PairKey() = default;
  PairKey(Rational p, Rational s) : primary(std::move(p)), secondary(std::move(s)) {}
  PairKey& operator+=(const PairKey& o) {
    primary += o.primary;
    secondary += o.secondary;
    return *this;
  }
  friend bool operator<(const PairKey& a, const PairKey& b) {
    if (a.primary != b.primary) return a.primary < b.primary;
    return a.secondary < b.secondary;
  }
  friend bool operator==(const PairKey& a, const PairKey& b) {
    return a.primary == b.primary && a.secondary == b.secondary;
  }
};

// Kruskal over the graphic matroid with `forced` edges taken first. Returns the
// resulting tree and its key sum, or nullopt if no spanning tree exists.
std::optional<std::pair<ElemSet, PairKey>> keyed_kruskal(const SpanningTrees& g,
                                                         const std::vector<PairKey>& key,
                                                         const ElemSet& forced,
                                                         bool reversed) {
  UnionFind uf(g.num_vertices);
  ElemSet tree;
  PairKey total;
  for (int e : forced) {
    if (!uf.unite(g.edges[e].first, g.edges[e].second)) return std::nullopt;
    tree.push_back(e);
    total += key[e];
  }
  std::vector<int> order(g.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (!(key[a] == key[b])) return key[a] < key[b];
    return reversed ? a > b : a < b;
  });
  for (int e : order) {
    if (uf.unite(g.edges[e].first, g.edges[e].second)) {
      tree.push_back(e);
      total += key[e];
    }
  }
  if (static_cast<int>(tree.size()) != g.num_vertices - 1) return std::nullopt;
  return std::make_pair(make_set(std::move(tree)), total);
}

// Minimum-key spanning tree whose index list is lexicographically extreme among
// the minimum-key trees: greedily force each candidate edge and keep it when the
// completion still attains the optimal key sum.
OracleResult tree_oracle(const SpanningTrees& g, const std::vector<PairKey>& key, bool reversed) {
  auto best = keyed_kruskal(g, key, {}, reversed);
  if (!best) throw Error("no feasible solution");
  const PairKey target = best->second;
  ElemSet forced;
  const int m = static_cast<int>(g.edges.size());
  for (int step = 0; step < m && static_cast<int>(forced.size()) < g.num_vertices - 1; ++step) {
    const int e = reversed ? m - 1 - step : step;
    ElemSet trial = set_union(forced, ElemSet{e});
    if (trial.size() == forced.size()) continue;
    auto completed = keyed_kruskal(g, key, trial, reversed);
    if (completed && completed->second == target) forced = std::move(trial);
  }
  auto final_tree = keyed_kruskal(g, key, forced, reversed);
  return {final_tree->first, final_tree->second.primary};
}

std::vector<int> topological_order(const DagPaths& g) {
  std::vector<std::vector<int>> out(g.num_vertices);
  std::vector<int> indeg(g.num_vertices, 0);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) {
    out[g.arcs[e].first].push_back(static_cast<int>(e));
    ++indeg[g.arcs[e].second];
  }
  std::vector<int> stack, order;
  for (int v = 0; v < g.num_vertices; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int e : out[v])
      if (--indeg[g.arcs[e].second] == 0) stack.push_back(g.arcs[e].second);
  }
  if (static_cast<int>(order.size()) != g.num_vertices) throw Error("graph is not acyclic");
  return order;
}

OracleResult dag_oracle(const DagPaths& g, const std::vector<PairKey>& key, bool reversed) {
  const auto order = topological_order(g);
  std::vector<std::optional<PairKey>> dist(g.num_vertices);
  std::vector<int> pred_arc(g.num_vertices, -1);
  dist[g.source] = PairKey(0, 0);
  std::vector<std::vector<int>> in(g.num_vertices);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) in[g.arcs[e].second].push_back(static_cast<int>(e));
  for (int v : order) {
    for (int e : in[v]) {
      const int u = g.arcs[e].first;
      if (!dist[u]) continue;
      PairKey cand = *dist[u];
      cand += key[e];
      bool better = !dist[v] || cand < *dist[v];
      if (!better && dist[v] && cand == *dist[v] && pred_arc[v] >= 0) {
        better = reversed ? e > pred_arc[v] : e < pred_arc[v];
      }
      if (better) {
        dist[v] = cand;
        pred_arc[v] = e;
      }
    }
  }
  if (!dist[g.sink]) throw Error("no feasible solution");
  ElemSet path;
  for (int v = g.sink; v != g.source;) {
    const int e = pred_arc[v];
    path.push_back(e);
    v = g.arcs[e].first;
  }
  return {make_set(std::move(path)), dist[g.sink]->primary};
}

void enumerate_trees(const SpanningTrees& g, std::size_t cap, std::vector<ElemSet>& out) {
  const int m = static_cast<int>(g.edges.size());
  ElemSet current;
  auto rec = [&](auto&& self, int next, UnionFind uf, int picked) -> void {
    if (picked == g.num_vertices - 1) {
      if (out.size() >= cap) throw Error("family too large to enumerate");
      out.push_back(current);
      return;
    }
    if (m - next < g.num_vertices - 1 - picked) return;
    for (int e = next; e < m; ++e) {
      UnionFind copy = uf;
      if (!copy.unite(g.edges[e].first, g.edges[e].second)) continue;
      current.push_back(e);
      self(self, e + 1, copy, picked + 1);
      current.pop_back();
    }
  };
  rec(rec, 0, UnionFind(g.num_vertices), 0);
}

void enumerate_paths(const DagPaths& g, std::size_t cap, std::vector<ElemSet>& out) {
  std::vector<std::vector<int>> outarcs(g.num_vertices);
  for (std::size_t e = 0; e < g.arcs.size(); ++e) outarcs[g.arcs[e].first].push_back(static_cast<int>(e));
  ElemSet current;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == g.sink) {
      if (out.size() >= cap) throw Error("family too large to enumerate");
      out.push_back(make_set(current));
      return;
    }
    for (int e : outarcs[v]) {
      current.push_back(e);
      self(self, g.arcs[e].second);
      current.pop_back();
    }
  };
  rec(rec, g.source);
}

Rational set_cost(const ElemSet& f, const std::vector<Rational>& cost) {
  Rational total;
  for (int s : f) total += cost[s];
  return total;
}

}  // namespace

int family_num_elements(const FamilyDescriptor& fam) {
  if (const auto* g = std::get_if<SpanningTrees>(&fam)) return static_cast<int>(g->edges.size());
  if (const auto* g = std::get_if<DagPaths>(&fam)) return static_cast<int>(g->arcs.size());
  int max_id = -1;
  for (const auto& f : std::get<ExplicitFamily>(fam).sets)
    for (int s : f) max_id = std::max(max_id, s);
  return max_id + 1;
}

void validate_family(const FamilyDescriptor& fam, int num_elements) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    if (ex->sets.empty()) throw Error("no feasible solution");
    std::set<ElemSet> seen;
    for (const auto& f : ex->sets) {
      if (!std::is_sorted(f.begin(), f.end())) throw InternalError("explicit set not sorted");
      for (int s : f)
        if (s < 0 || s >= num_elements) throw Error("family set references unknown element");
      if (!seen.insert(f).second) throw Error("explicit family has duplicate sets");
    }
    return;
  }
  if (const auto* g = std::get_if<SpanningTrees>(&fam)) {
    if (g->num_vertices <= 0) throw Error("spanning_trees graph needs vertices");
    UnionFind uf(g->num_vertices);
    for (const auto& [u, v] : g->edges) {
      if (u < 0 || u >= g->num_vertices || v < 0 || v >= g->num_vertices || u == v)
        throw Error("bad edge in spanning_trees graph");
      uf.unite(u, v);
    }
    for (int v = 1; v < g->num_vertices; ++v)
      if (uf.root(v) != uf.root(0)) throw Error("no feasible solution");
    return;
  }
  const auto& g = std::get<DagPaths>(fam);
  if (g.num_vertices <= 0) throw Error("dag_st_paths graph needs vertices");
  if (g.source < 0 || g.source >= g.num_vertices || g.sink < 0 || g.sink >= g.num_vertices)
    throw Error("bad source/sink");
  for (const auto& [u, v] : g.arcs)
    if (u < 0 || u >= g.num_vertices || v < 0 || v >= g.num_vertices)
      throw Error("bad arc in dag_st_paths graph");
  topological_order(g);  // throws unless acyclic
  std::vector<PairKey> zero(g.arcs.size());
  dag_oracle(g, zero, false);  // throws unless sink reachable
}

OracleResult min_cost_member(const FamilyDescriptor& fam, const std::vector<Rational>& cost) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    if (ex->sets.empty()) throw Error("no feasible solution");
    const ElemSet* best = nullptr;
    Rational best_cost;
    for (const auto& f : ex->sets) {
      Rational c = set_cost(f, cost);
      if (!best || c < best_cost || (c == best_cost && f < *best)) {
        best = &f;
        best_cost = std::move(c);
      }
    }
    return {*best, best_cost};
  }
  std::vector<PairKey> key(cost.size());
  for (std::size_t e = 0; e < cost.size(); ++e) key[e] = PairKey(cost[e], 0);
  if (const auto* g = std::get_if<SpanningTrees>(&fam)) return tree_oracle(*g, key, false);
  return dag_oracle(std::get<DagPaths>(fam), key, false);
}

std::vector<ElemSet> enumerate_family(const FamilyDescriptor& fam, std::size_t cap) {
  std::vector<ElemSet> out;
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    if (ex->sets.size() > cap) throw Error("family too large to enumerate");
    out = ex->sets;
  } else if (const auto* g = std::get_if<SpanningTrees>(&fam)) {
    enumerate_trees(*g, cap, out);
  } else {
    enumerate_paths(std::get<DagPaths>(fam), cap, out);
  }
  return out;
}

bool contains(const FamilyDescriptor& fam, const ElemSet& f) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    return std::find(ex->sets.begin(), ex->sets.end(), f) != ex->sets.end();
  }
  if (const auto* g = std::get_if<SpanningTrees>(&fam)) {
    if (static_cast<int>(f.size()) != g->num_vertices - 1) return false;
    UnionFind uf(g->num_vertices);
    for (int e : f) {
      if (e < 0 || e >= static_cast<int>(g->edges.size())) return false;
      if (!uf.unite(g->edges[e].first, g->edges[e].second)) return false;
    }
    return true;  // acyclic with V-1 edges spans the (connected) vertex set
  }
  const auto& g = std::get<DagPaths>(fam);
  // Walk from the source; f must be exactly the arcs of one simple s-t path.
  ElemSet remaining = f;
  int v = g.source;
  while (v != g.sink) {
    int found = -1;
    for (int e : remaining)
      if (g.arcs[e].first == v) {
        if (found >= 0) return false;
        found = e;
      }
    if (found < 0) return false;
    remaining.erase(std::find(remaining.begin(), remaining.end(), found));
    v = g.arcs[found].second;
  }
  return remaining.empty();
}

Oracle make_solver_oracle(const FamilyDescriptor& fam, const ElemSet& input_solution,
                          const std::vector<Rational>& weights, std::size_t enumeration_cap,
                          bool reversed) {
  if (const auto* ex = std::get_if<ExplicitFamily>(&fam)) {
    // Copy the sets so the oracle owns its data.
    auto sets = ex->sets;
    auto fstar = input_solution;
    auto w = weights;
    return [sets = std::move(sets), fstar = std::move(fstar), w = std::move(w),
            reversed](const std::vector<Rational>& cost) -> OracleResult {
      const ElemSet* best = nullptr;
      Rational best_cost, best_overlap;
      for (const auto& f : sets) {
        Rational c = set_cost(f, cost);
        Rational overlap;
        for (int s : set_intersect(f, fstar)) overlap += w[s].reciprocal();
        bool better = false;
        if (!best || c < best_cost) {
          better = true;
        } else if (c == best_cost) {
          if (overlap != best_overlap) {
            better = reversed ? overlap > best_overlap : overlap < best_overlap;
          } else {
            better = reversed ? f > *best : f < *best;
          }
        }
        if (better) {
          best = &f;
          best_cost = std::move(c);
          best_overlap = std::move(overlap);
        }
      }
      if (!best) throw Error("no feasible solution");
      return {*best, best_cost};
    };
  }
  (void)enumeration_cap;
  auto fstar = input_solution;
  auto w = weights;
  auto fam_copy = fam;
  return [fam_copy = std::move(fam_copy), fstar = std::move(fstar), w = std::move(w),
          reversed](const std::vector<Rational>& cost) -> OracleResult {
    std::vector<PairKey> key(cost.size());
    for (std::size_t e = 0; e < cost.size(); ++e) {
      Rational sec = set_contains(fstar, static_cast<int>(e)) ? w[e].reciprocal() : Rational(0);
      if (reversed) sec = -sec;
      key[e] = PairKey(cost[e], std::move(sec));
    }
    if (const auto* g = std::get_if<SpanningTrees>(&fam_copy)) return tree_oracle(*g, key, reversed);
    return dag_oracle(std::get<DagPaths>(fam_copy), key, reversed);
  };
}

}  // namespace invspan
