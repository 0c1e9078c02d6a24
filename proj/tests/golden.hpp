#pragma once

// Golden-trace harness shared by the unit tests and the acceptance suite: each
// data file carries an instance, its uniform bound scalars, and the expected
// iteration sequence (case labels, increments, eliminated sets, modified-cost
// rows, final verdict).

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "invspan/io.hpp"
#include "invspan/solver.hpp"

namespace golden {

struct ExpectedStep {
  std::string label;
  invspan::ElemSet found;
  std::optional<invspan::Rational> delta, Delta;
};

struct Toy {
  std::string name;
  invspan::Instance instance;
  invspan::SpecLUInstance sub;
  bool expect_optimal = false;
  std::vector<ExpectedStep> steps;
  std::vector<std::vector<invspan::Rational>> cost_rows;
  invspan::Rational span, d, D;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw invspan::Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Toy load_toy(const std::filesystem::path& path) {
  const nlohmann::json doc = nlohmann::json::parse(slurp(path));
  Toy toy;
  toy.name = doc.at("name").get<std::string>();
  toy.instance = invspan::parse_instance(doc.at("instance").dump());
  const auto& sp = doc.at("speclu");
  toy.sub = invspan::make_speclu(
      toy.instance, {}, invspan::ExtRational::parse(sp.at("l_in").get<std::string>()),
      invspan::ExtRational::parse(sp.at("u_in").get<std::string>()),
      invspan::ExtRational::parse(sp.at("l_out").get<std::string>()),
      invspan::ExtRational::parse(sp.at("u_out").get<std::string>()));
  const auto& expected = doc.at("expected");
  toy.expect_optimal = expected.at("verdict").get<std::string>() == "optimal";
  std::map<std::string, int> index;
  for (int s = 0; s < toy.instance.n(); ++s) index[toy.instance.ids[s]] = s;
  for (const auto& js : expected.at("steps")) {
    ExpectedStep step;
    step.label = js.at("case").get<std::string>();
    for (const auto& id : js.at("found")) step.found.push_back(index.at(id.get<std::string>()));
    step.found = invspan::make_set(step.found);
    if (js.contains("delta")) {
      step.delta = invspan::Rational::parse(js.at("delta").get<std::string>());
      step.Delta = invspan::Rational::parse(js.at("Delta").get<std::string>());
    }
    toy.steps.push_back(std::move(step));
  }
  for (const auto& row : expected.at("cost_rows")) {
    std::vector<invspan::Rational> values;
    for (const auto& v : row) values.push_back(invspan::Rational::parse(v.get<std::string>()));
    toy.cost_rows.push_back(std::move(values));
  }
  if (toy.expect_optimal) {
    toy.span = invspan::Rational::parse(expected.at("span").get<std::string>());
    toy.d = invspan::Rational::parse(expected.at("d").get<std::string>());
    toy.D = invspan::Rational::parse(expected.at("D").get<std::string>());
  }
  return toy;
}

inline std::vector<std::filesystem::path> toy_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

// Replays one toy and compares every captioned detail. Returns an empty string
// on success, otherwise a description of the first difference.
inline std::string replay(const Toy& toy) {
  using namespace invspan;
  const Oracle oracle = make_solver_oracle(toy.sub.family, toy.sub.input_solution,
                                           toy.sub.weights, 1u << 20);
  const mpz_class cap = default_iteration_cap(toy.instance.inv_weight_norm);
  const SolveOutcome outcome = solve_speclu(toy.sub, oracle, cap);
  std::ostringstream fail;

  auto step_count = toy.steps.size();
  if (outcome.trace.steps.size() != step_count)
    return "expected " + std::to_string(step_count) + " steps, got " +
           std::to_string(outcome.trace.steps.size());
  for (std::size_t i = 0; i < step_count; ++i) {
    const auto& got = outcome.trace.steps[i];
    const auto& want = toy.steps[i];
    if (to_string(got.label) != want.label)
      return "step " + std::to_string(i) + ": case " + to_string(got.label) + " != " + want.label;
    if (got.found != want.found) return "step " + std::to_string(i) + ": wrong eliminated set";
    if (want.delta && !(got.delta == *want.delta && got.Delta == *want.Delta))
      return "step " + std::to_string(i) + ": increments (" + got.delta.str() + ", " +
             got.Delta.str() + ") != (" + want.delta->str() + ", " + want.Delta->str() + ")";
  }

  const bool optimal = outcome.status == SolveOutcome::Status::Optimal;
  if (optimal != toy.expect_optimal) return "verdict mismatch";
  if (optimal) {
    if (!(outcome.d == toy.d && outcome.D == toy.D))
      return "final (d, D) = (" + outcome.d.str() + ", " + outcome.D.str() + ")";
    if (!(weighted_span(outcome.deviation, toy.sub.weights) == toy.span))
      return "final span mismatch";
  }

  // Modified-cost rows, starting from the untouched costs.
  Rational d = 0, D = 0;
  {
    auto [d0, D0] = initial_parameters(toy.sub);
    if (!(d0.is_zero() && D0.is_zero())) return "nonzero initial parameters";
    d = d0;
    D = D0;
  }
  for (std::size_t row = 0; row < toy.cost_rows.size(); ++row) {
    if (row > 0) {
      d += outcome.trace.steps[row - 1].delta;
      D += outcome.trace.steps[row - 1].Delta;
    }
    const DeviationVector p = toy.sub.deviation(d, D);
    for (int s = 0; s < toy.instance.n(); ++s) {
      const Rational value = toy.sub.shifted_costs[0][s] - p.values[s];
      if (!(value == toy.cost_rows[row][s]))
        return "cost row " + std::to_string(row) + " differs at element " +
               toy.instance.ids[s] + ": " + value.str() + " != " + toy.cost_rows[row][s].str();
    }
  }

  try {
    check_trace_invariants(outcome.trace, toy.sub);
  } catch (const InternalError& err) {
    return std::string("trace invariant: ") + err.what();
  }
  return fail.str();
}

}  // namespace golden
