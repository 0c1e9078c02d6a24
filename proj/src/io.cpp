#include "invspan/io.hpp"

#include <map>
#include <random>
#include <set>

#include <json.hpp>

namespace invspan {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw Error(where + ": unknown key '" + key + "'");
  }
}

std::map<std::string, int> index_ids(const std::vector<std::string>& ids) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], static_cast<int>(i)).second)
      throw Error("duplicate element id '" + ids[i] + "'");
  }
  return index;
}

int lookup(const std::map<std::string, int>& index, const json& id, const std::string& where) {
  if (!id.is_string()) throw Error(where + ": element ids must be strings");
  auto it = index.find(id.get<std::string>());
  if (it == index.end()) throw Error(where + ": unknown element '" + id.get<std::string>() + "'");
  return it->second;
}

ElemSet parse_set(const std::map<std::string, int>& index, const json& arr,
                  const std::string& where) {
  if (!arr.is_array()) throw Error(where + ": expected a list of element ids");
  ElemSet out;
  for (const auto& id : arr) out.push_back(lookup(index, id, where));
  return make_set(std::move(out));
}

FamilyDescriptor parse_family(const json& fam, const std::map<std::string, int>& index) {
  if (!fam.is_object() || !fam.contains("kind")) throw Error("family: missing kind");
  const std::string kind = fam.at("kind").get<std::string>();
  if (kind == "explicit") {
    reject_unknown_keys(fam, {"kind", "sets"}, "family");
    ExplicitFamily out;
    for (const auto& s : fam.at("sets")) out.sets.push_back(parse_set(index, s, "family.sets"));
    return out;
  }
  if (kind == "spanning_trees" || kind == "dag_st_paths") {
    const json& graph = fam.at("graph");
    reject_unknown_keys(graph, {"vertices", "edges"}, "family.graph");
    std::map<std::string, int> vertex_index;
    std::vector<std::string> vertices;
    for (const auto& v : graph.at("vertices")) {
      vertices.push_back(v.get<std::string>());
      if (!vertex_index.emplace(vertices.back(), static_cast<int>(vertices.size()) - 1).second)
        throw Error("family.graph: duplicate vertex '" + vertices.back() + "'");
    }
    // edges: element id -> [u, v]; every instance element must appear.
    std::vector<std::pair<int, int>> edges(index.size(), {-1, -1});
    for (const auto& [eid, ends] : graph.at("edges").items()) {
      auto it = index.find(eid);
      if (it == index.end()) throw Error("family.graph: edge id '" + eid + "' is not an element");
      if (!ends.is_array() || ends.size() != 2) throw Error("family.graph: edge needs [u, v]");
      auto vit = vertex_index.find(ends[0].get<std::string>());
      auto wit = vertex_index.find(ends[1].get<std::string>());
      if (vit == vertex_index.end() || wit == vertex_index.end())
        throw Error("family.graph: edge references unknown vertex");
      edges[it->second] = {vit->second, wit->second};
    }
    for (const auto& [u, v] : edges)
      if (u < 0 && v < 0) throw Error("family.graph: element without an edge entry");
    if (kind == "spanning_trees") {
      reject_unknown_keys(fam, {"kind", "graph"}, "family");
      return SpanningTrees{static_cast<int>(vertices.size()), std::move(edges)};
    }
    reject_unknown_keys(fam, {"kind", "graph", "source", "sink"}, "family");
    auto sit = vertex_index.find(fam.at("source").get<std::string>());
    auto tit = vertex_index.find(fam.at("sink").get<std::string>());
    if (sit == vertex_index.end() || tit == vertex_index.end())
      throw Error("family: unknown source/sink vertex");
    return DagPaths{static_cast<int>(vertices.size()), std::move(edges), sit->second, tit->second};
  }
  throw Error("family: unknown kind '" + kind + "'");
}

std::vector<Rational> parse_value_map(const json& obj, const std::vector<std::string>& ids,
                                      const std::string& where) {
  std::vector<Rational> out(ids.size());
  std::set<std::string> seen;
  for (const auto& [key, value] : obj.items()) seen.insert(key);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!obj.contains(ids[i])) throw Error(where + ": missing value for '" + ids[i] + "'");
    out[i] = Rational::parse(obj.at(ids[i]).get<std::string>());
    seen.erase(ids[i]);
  }
  if (!seen.empty()) throw Error(where + ": unknown element '" + *seen.begin() + "'");
  return out;
}

std::vector<ExtRational> parse_bound_map(const json& parent, const char* key,
                                         const std::vector<std::string>& ids, bool is_lower) {
  std::vector<ExtRational> out(ids.size(),
                               is_lower ? ExtRational::neg_inf() : ExtRational::pos_inf());
  if (!parent.contains(key)) return out;
  const json& obj = parent.at(key);
  std::set<std::string> known(ids.begin(), ids.end());
  for (const auto& [id, value] : obj.items()) {
    if (!known.count(id)) throw Error(std::string(key) + ": unknown element '" + id + "'");
  }
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (obj.contains(ids[i])) out[i] = ExtRational::parse(obj.at(ids[i]).get<std::string>());
  }
  return out;
}

}  // namespace

namespace {

Instance parse_instance_checked(const json& doc) {
  reject_unknown_keys(doc,
                      {"elements", "weights", "costs", "family", "input_solution", "lower",
                       "upper"},
                      "instance");
  Instance inst;
  for (const auto& id : doc.at("elements")) inst.ids.push_back(id.get<std::string>());
  const auto index = index_ids(inst.ids);
  inst.weights = parse_value_map(doc.at("weights"), inst.ids, "weights");
  if (!doc.at("costs").is_array() || doc.at("costs").empty())
    throw Error("costs: expected a non-empty list of cost maps");
  for (const auto& c : doc.at("costs"))
    inst.costs.push_back(parse_value_map(c, inst.ids, "costs"));
  inst.family = parse_family(doc.at("family"), index);
  inst.input_solution = parse_set(index, doc.at("input_solution"), "input_solution");
  inst.lower = parse_bound_map(doc, "lower", inst.ids, true);
  inst.upper = parse_bound_map(doc, "upper", inst.ids, false);
  inst.finalize();
  return inst;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw Error(std::string("instance JSON: ") + err.what());
  }
  try {
    return parse_instance_checked(doc);
  } catch (const json::exception& err) {
    // missing keys, wrong value kinds
    throw Error(std::string("instance JSON: ") + err.what());
  }
}

std::string serialize_instance(const Instance& inst) {
  ordered_json doc;
  doc["elements"] = inst.ids;
  ordered_json weights;
  // Weights are emitted in the caller's original scale.
  for (int s = 0; s < inst.n(); ++s)
    weights[inst.ids[s]] = (inst.weights[s] / inst.weight_scale).str();
  doc["weights"] = weights;
  ordered_json costs = ordered_json::array();
  for (const auto& c : inst.costs) {
    ordered_json one;
    for (int s = 0; s < inst.n(); ++s) one[inst.ids[s]] = c[s].str();
    costs.push_back(one);
  }
  doc["costs"] = costs;
  ordered_json family;
  if (const auto* ex = std::get_if<ExplicitFamily>(&inst.family)) {
    family["kind"] = "explicit";
    ordered_json sets = ordered_json::array();
    for (const auto& f : ex->sets) {
      ordered_json one = ordered_json::array();
      for (int s : f) one.push_back(inst.ids[s]);
      sets.push_back(one);
    }
    family["sets"] = sets;
  } else if (const auto* g = std::get_if<SpanningTrees>(&inst.family)) {
    family["kind"] = "spanning_trees";
    ordered_json graph;
    ordered_json vertices = ordered_json::array();
    for (int v = 0; v < g->num_vertices; ++v) vertices.push_back("v" + std::to_string(v));
    graph["vertices"] = vertices;
    ordered_json edges;
    for (std::size_t e = 0; e < g->edges.size(); ++e)
      edges[inst.ids[e]] = {"v" + std::to_string(g->edges[e].first),
                            "v" + std::to_string(g->edges[e].second)};
    graph["edges"] = edges;
    family["graph"] = graph;
  } else {
    const auto& dag = std::get<DagPaths>(inst.family);
    family["kind"] = "dag_st_paths";
    ordered_json graph;
    ordered_json vertices = ordered_json::array();
    for (int v = 0; v < dag.num_vertices; ++v) vertices.push_back("v" + std::to_string(v));
    graph["vertices"] = vertices;
    ordered_json edges;
    for (std::size_t e = 0; e < dag.arcs.size(); ++e)
      edges[inst.ids[e]] = {"v" + std::to_string(dag.arcs[e].first),
                            "v" + std::to_string(dag.arcs[e].second)};
    graph["edges"] = edges;
    family["graph"] = graph;
    family["source"] = "v" + std::to_string(dag.source);
    family["sink"] = "v" + std::to_string(dag.sink);
  }
  doc["family"] = family;
  ordered_json fstar = ordered_json::array();
  for (int s : inst.input_solution) fstar.push_back(inst.ids[s]);
  doc["input_solution"] = fstar;
  ordered_json lower, upper;
  for (int s = 0; s < inst.n(); ++s) {
    lower[inst.ids[s]] = inst.lower[s].str();
    upper[inst.ids[s]] = inst.upper[s].str();
  }
  doc["lower"] = lower;
  doc["upper"] = upper;
  return doc.dump(2) + "\n";
}

Instance generate_instance(const GenConfig& config) {
  if (config.n < 2) throw Error("gen: n must be at least 2");
  if (config.family_size < 1) throw Error("gen: family_size must be positive");
  if (config.weight_denoms.empty()) throw Error("gen: weight_denoms must be non-empty");
  std::mt19937_64 rng(config.seed);
  auto pick = [&rng](long lo, long hi) {
    return static_cast<long>(lo + static_cast<long long>(rng() % static_cast<unsigned long long>(
                                      hi - lo + 1)));
  };

  Instance inst;
  for (int s = 0; s < config.n; ++s) inst.ids.push_back("e" + std::to_string(s));
  for (int s = 0; s < config.n; ++s) {
    const long d = config.weight_denoms[rng() % config.weight_denoms.size()];
    if (d <= 0) throw Error("gen: weight denominators must be positive");
    inst.weights.push_back(Rational(1, d));
  }
  for (int j = 0; j < std::max(1, config.num_costs); ++j) {
    std::vector<Rational> c;
    for (int s = 0; s < config.n; ++s) c.push_back(Rational(pick(-5, 5)));
    inst.costs.push_back(std::move(c));
  }

  std::set<ElemSet> members;
  int attempts = 0;
  while (static_cast<int>(members.size()) < config.family_size && attempts < 64 * config.family_size) {
    ++attempts;
    ElemSet f;
    for (int s = 0; s < config.n; ++s)
      if (rng() % 2 == 0) f.push_back(s);
    if (f.empty()) continue;
    members.insert(make_set(std::move(f)));
  }
  ExplicitFamily fam;
  fam.sets.assign(members.begin(), members.end());
  if (fam.sets.empty()) fam.sets.push_back(ElemSet{0});
  inst.input_solution = fam.sets[rng() % fam.sets.size()];
  inst.family = std::move(fam);

  inst.lower.assign(config.n, ExtRational::neg_inf());
  inst.upper.assign(config.n, ExtRational::pos_inf());
  if (config.bound_style == "unbounded") {
    // keep infinities
  } else if (config.bound_style == "box") {
    // Each element admits zero deviation, so the interval reduction stays exact.
    for (int s = 0; s < config.n; ++s) {
      if (rng() % 4 != 0) inst.lower[s] = ExtRational(Rational(pick(-3, 0)));
      if (rng() % 4 != 0) inst.upper[s] = ExtRational(Rational(pick(0, 3)));
    }
  } else if (config.bound_style == "speclu-like") {
    // Uniform scaled bounds with an optional frozen set; sign conditions are
    // enforced whenever the frozen set is non-empty.
    ElemSet s0;
    for (int s = 0; s < config.n; ++s)
      if (rng() % 4 == 0) s0.push_back(s);
    if (is_subset(inst.input_solution, s0)) s0.clear();  // keep some free element
    const bool frozen = !s0.empty();
    // A non-empty frozen set pins l_in and u_out to zero; that satisfies the
    // sign conditions and keeps the normalization collapse-free.
    long l_in = frozen ? 0 : pick(-3, 1);
    long u_in = frozen ? pick(0, 3) : pick(l_in, 3);
    long u_out = frozen ? 0 : pick(-1, 1);
    if (u_out > u_in) u_out = u_in;
    long l_out = pick(-3, u_out);
    if (l_out > l_in) l_out = l_in;
    bool lo_inf = rng() % 3 == 0;
    const bool uo_inf = !frozen && rng() % 3 == 0;
    const bool li_inf = !frozen && rng() % 3 == 0;
    bool ui_inf = rng() % 3 == 0;
    if (li_inf) lo_inf = true;  // keep l_out <= l_in
    if (uo_inf) ui_inf = true;  // keep u_out <= u_in
    for (int s = 0; s < config.n; ++s) {
      const Rational inv_w = inst.weights[s].reciprocal();
      if (set_contains(s0, s)) {
        inst.lower[s] = ExtRational(0);
        inst.upper[s] = ExtRational(0);
      } else if (set_contains(inst.input_solution, s)) {
        inst.lower[s] = li_inf ? ExtRational::neg_inf() : ExtRational(Rational(l_in) * inv_w);
        inst.upper[s] = ui_inf ? ExtRational::pos_inf() : ExtRational(Rational(u_in) * inv_w);
      } else {
        inst.lower[s] = lo_inf ? ExtRational::neg_inf() : ExtRational(Rational(l_out) * inv_w);
        inst.upper[s] = uo_inf ? ExtRational::pos_inf() : ExtRational(Rational(u_out) * inv_w);
      }
    }
  } else {
    throw Error("gen: unknown bound_style '" + config.bound_style + "'");
  }
  inst.finalize();
  return inst;
}

std::string serialize_trace(const std::vector<std::string>& ids, const SolveTrace& trace) {
  ordered_json out;
  ordered_json steps = ordered_json::array();
  for (const auto& step : trace.steps) {
    ordered_json one;
    one["case"] = to_string(step.label);
    ordered_json found = ordered_json::array();
    for (int s : step.found) found.push_back(ids[s]);
    one["found"] = found;
    one["cost_index"] = step.cost_index;
    if (!is_infeasible_label(step.label)) {
      one["delta"] = step.delta.str();
      one["Delta"] = step.Delta.str();
      one["d"] = step.d_after.str();
      one["D"] = step.D_after.str();
    }
    steps.push_back(one);
  }
  out["steps"] = steps;
  out["oracle_calls"] = trace.oracle_calls;
  return out.dump();
}

std::string serialize_solution(const Instance& inst, const PipelineOutcome& outcome,
                               bool include_trace) {
  ordered_json doc;
  const bool optimal = outcome.status == SolveOutcome::Status::Optimal;
  doc["status"] = optimal ? "optimal" : "infeasible";
  if (optimal) {
    doc["span"] = (outcome.span / inst.weight_scale).str();
    doc["delta"] = outcome.d.str();
    doc["Delta"] = outcome.D.str();
    ordered_json dev;
    for (int s = 0; s < inst.n(); ++s) dev[inst.ids[s]] = outcome.deviation.values[s].str();
    doc["deviation"] = dev;
  }
  doc["iterations"] = outcome.total_iterations;
  doc["oracle_calls"] = outcome.total_oracle_calls;
  if (include_trace) doc["trace"] = ordered_json::parse(serialize_trace(inst.ids, outcome.trace));
  return doc.dump(2) + "\n";
}

std::string serialize_certificate(const Instance& inst, const MinMaxCertificate& cert) {
  ordered_json doc;
  doc["value"] = (cert.value / inst.weight_scale).str();
  doc["omega1"] = cert.omega1.is_finite() ? (cert.omega1.finite() / inst.weight_scale).str()
                                          : cert.omega1.str();
  doc["omega2"] = cert.omega2.is_finite() ? (cert.omega2.finite() / inst.weight_scale).str()
                                          : cert.omega2.str();
  doc["d"] = cert.d.str();
  doc["D"] = cert.D.str();
  ordered_json witness;
  for (int s = 0; s < inst.n(); ++s) witness[inst.ids[s]] = cert.witness.values[s].str();
  doc["deviation"] = witness;
  if (cert.omega1_witness) {
    ordered_json w;
    w["cost_index"] = cert.omega1_witness->cost_index;
    ordered_json member = ordered_json::array();
    for (int s : cert.omega1_witness->member) member.push_back(inst.ids[s]);
    w["member"] = member;
    doc["omega1_witness"] = w;
  }
  if (cert.omega2_witness) {
    ordered_json w;
    w["small_cost_index"] = cert.omega2_witness->small_cost_index;
    w["large_cost_index"] = cert.omega2_witness->large_cost_index;
    ordered_json sm = ordered_json::array(), lg = ordered_json::array();
    for (int s : cert.omega2_witness->small) sm.push_back(inst.ids[s]);
    for (int s : cert.omega2_witness->large) lg.push_back(inst.ids[s]);
    w["small"] = sm;
    w["large"] = lg;
    doc["omega2_witness"] = w;
  }
  return doc.dump(2) + "\n";
}

}  // namespace invspan
