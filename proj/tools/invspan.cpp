#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "invspan/feasibility.hpp"
#include "invspan/io.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invspan::Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_solve(const std::string& path, bool multi, bool trace, long cap, int workers) {
  const invspan::Instance inst = invspan::parse_instance(read_file(path));
  invspan::SolveOptions opts;
  if (cap > 0) opts.cap = mpz_class(cap);
  opts.workers = workers;
  const bool use_multi = multi || inst.k() >= 2;
  if (multi && inst.k() < 2) throw invspan::Error("--multi requires at least two cost vectors");
  const invspan::PipelineOutcome outcome =
      use_multi ? invspan::solve_multi(inst, opts) : invspan::solve(inst, opts);
  std::cout << invspan::serialize_solution(inst, outcome, trace);
  return outcome.status == invspan::SolveOutcome::Status::Optimal ? 0 : 2;
}

int run_verify(const std::string& path, bool full, bool reduced, bool feasibility) {
  const invspan::Instance inst = invspan::parse_instance(read_file(path));
  bool ok = true;
  if (feasibility) {
    // Feasibility characterization check, one subproblem per interval pair:
    // the witness verdict must match the reduced LP's feasibility.
    const auto reduced_result = invspan::lp_span_reduced(inst);
    const auto norm = invspan::normalize_bounds_and_order(inst);
    const auto cells = invspan::candidate_intervals(norm);
    bool any_feasible = false;
    const auto oracle = invspan::make_solver_oracle(inst.family, inst.input_solution,
                                                    inst.weights, 200000);
    for (const auto& dv : cells.delta) {
      for (const auto& sv : cells.sum) {
        const auto sub = invspan::build_subproblem(norm, {dv, sv});
        if (invspan::feasibility_witness(sub, oracle, 200000).feasible) any_feasible = true;
      }
    }
    const bool lp_feasible = reduced_result.status == invspan::SpanResult::Status::Optimal;
    ok = any_feasible == lp_feasible;
    std::cout << "feasibility witness: " << (any_feasible ? "feasible" : "infeasible")
              << ", reduced LP: " << (lp_feasible ? "feasible" : "infeasible")
              << (ok ? " [match]" : " [MISMATCH]") << "\n";
    return ok ? 0 : 1;
  }

  const invspan::PipelineOutcome outcome =
      inst.k() >= 2 ? invspan::solve_multi(inst) : invspan::solve(inst);
  if (reduced || (!full && !reduced)) {
    const auto report = invspan::cross_check(inst, outcome);
    std::cout << report.detail;
    ok = ok && report.match;
  }
  if (full) {
    const auto result = invspan::lp_span_full(inst);
    const bool solver_opt = outcome.status == invspan::SolveOutcome::Status::Optimal;
    const bool lp_opt = result.status == invspan::SpanResult::Status::Optimal;
    bool match = solver_opt == lp_opt && (!solver_opt || outcome.span == result.span);
    std::cout << "full LP: " << (lp_opt ? result.span.str() : "infeasible")
              << (match ? " [match]" : " [MISMATCH]") << "\n";
    ok = ok && match;
  }
  return ok ? 0 : 1;
}

int run_minmax(const std::string& path) {
  const invspan::Instance inst = invspan::parse_instance(read_file(path));
  const auto cert = invspan::certificate(inst, 200000);
  std::cout << invspan::serialize_certificate(inst, cert);
  return 0;
}

int run_gen(const invspan::GenConfig& config) {
  std::cout << invspan::serialize_instance(invspan::generate_instance(config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-constrained minimum-cost inverse optimization under the weighted span "
               "objective"};
  app.require_subcommand(1);

  std::string path;
  bool multi = false, trace = false;
  long cap = 0;
  int workers = 1;
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance file");
  solve_cmd->add_option("file", path)->required();
  solve_cmd->add_flag("--multi", multi, "use the multi-cost driver");
  solve_cmd->add_flag("--trace", trace, "emit the per-iteration trace");
  solve_cmd->add_option("--cap", cap, "iteration cap per subproblem");
  solve_cmd->add_option("--parallel", workers, "subproblem worker threads");

  bool full = false, reduced = false, feasibility = false;
  auto* verify_cmd = app.add_subcommand("verify", "check the solver against the LP oracles");
  verify_cmd->add_option("file", path)->required();
  verify_cmd->add_flag("--full", full, "compare against the full-vector LP");
  verify_cmd->add_flag("--reduced", reduced, "compare against the two-variable LP");
  verify_cmd->add_flag("--feasibility", feasibility, "check the feasibility witness");

  auto* minmax_cmd = app.add_subcommand("minmax", "emit the min-max certificate");
  minmax_cmd->add_option("file", path)->required();

  invspan::GenConfig config;
  std::vector<long> denoms = {1};
  auto* gen_cmd = app.add_subcommand("gen", "emit a deterministic random instance");
  gen_cmd->add_option("--seed", config.seed);
  gen_cmd->add_option("--n", config.n);
  gen_cmd->add_option("--family-size", config.family_size);
  gen_cmd->add_option("--weight-denoms", denoms, "denominators for 1/w");
  gen_cmd->add_option("--bound-style", config.bound_style, "unbounded | box | speclu-like");
  gen_cmd->add_option("--costs", config.num_costs, "number of cost vectors");

  CLI11_PARSE(app, argc, argv);
  try {
    if (solve_cmd->parsed()) return run_solve(path, multi, trace, cap, workers);
    if (verify_cmd->parsed()) return run_verify(path, full, reduced, feasibility);
    if (minmax_cmd->parsed()) return run_minmax(path);
    config.weight_denoms = denoms;
    return run_gen(config);
  } catch (const invspan::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return 1;
  }
}
