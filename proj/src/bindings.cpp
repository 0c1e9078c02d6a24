#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "invspan/feasibility.hpp"
#include "invspan/io.hpp"

namespace py = pybind11;

namespace {

std::string py_solve(const std::string& instance_json, bool multi, bool trace, long cap,
                     int workers) {
  const invspan::Instance inst = invspan::parse_instance(instance_json);
  invspan::SolveOptions opts;
  if (cap > 0) opts.cap = mpz_class(cap);
  opts.workers = workers;
  const bool use_multi = multi || inst.k() >= 2;
  const invspan::PipelineOutcome outcome =
      use_multi ? invspan::solve_multi(inst, opts) : invspan::solve(inst, opts);
  return invspan::serialize_solution(inst, outcome, trace);
}

std::string py_minmax(const std::string& instance_json) {
  const invspan::Instance inst = invspan::parse_instance(instance_json);
  return invspan::serialize_certificate(inst, invspan::certificate(inst, 200000));
}

py::dict py_verify(const std::string& instance_json) {
  const invspan::Instance inst = invspan::parse_instance(instance_json);
  const invspan::PipelineOutcome outcome =
      inst.k() >= 2 ? invspan::solve_multi(inst) : invspan::solve(inst);
  const invspan::VerifyReport report = invspan::cross_check(inst, outcome);
  py::dict out;
  out["match"] = report.match;
  out["detail"] = report.detail;
  out["status"] = outcome.status == invspan::SolveOutcome::Status::Optimal ? "optimal"
                                                                           : "infeasible";
  if (outcome.status == invspan::SolveOutcome::Status::Optimal)
    out["span"] = (outcome.span / inst.weight_scale).str();
  return out;
}

std::string py_gen(unsigned long long seed, int n, int family_size, std::vector<long> denoms,
                   const std::string& bound_style, int costs) {
  invspan::GenConfig config;
  config.seed = seed;
  config.n = n;
  config.family_size = family_size;
  config.weight_denoms = std::move(denoms);
  config.bound_style = bound_style;
  config.num_costs = costs;
  return invspan::serialize_instance(invspan::generate_instance(config));
}

}  // namespace

PYBIND11_MODULE(_invspan, m) {
  m.doc() = "Minimum-cost inverse optimization under the weighted span objective";
  py::register_exception<invspan::Error>(m, "InvspanError");
  m.def("solve", &py_solve, py::arg("instance_json"), py::arg("multi") = false,
        py::arg("trace") = false, py::arg("cap") = 0, py::arg("workers") = 1,
        "Solve an instance; returns the solution JSON.");
  m.def("verify", &py_verify, py::arg("instance_json"),
        "Solve and cross-check against the independent LP oracles.");
  m.def("minmax", &py_minmax, py::arg("instance_json"),
        "Min-max certificate for an unconstrained instance.");
  m.def("gen", &py_gen, py::arg("seed"), py::arg("n") = 4, py::arg("family_size") = 4,
        py::arg("weight_denoms") = std::vector<long>{1}, py::arg("bound_style") = "unbounded",
        py::arg("costs") = 1, "Deterministic random instance JSON.");
}
