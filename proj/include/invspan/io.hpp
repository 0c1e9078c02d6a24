#pragma once

#include <string>

#include "invspan/minmax.hpp"
#include "invspan/solver.hpp"
#include "invspan/verify.hpp"

namespace invspan {

// Instance files are UTF-8 JSON with rationals as strings; unknown keys are
// rejected. See README for the schema.
Instance parse_instance(const std::string& json_text);
std::string serialize_instance(const Instance& inst);

struct GenConfig {
  unsigned long long seed = 1;
  int n = 4;
  int family_size = 4;
  std::vector<long> weight_denoms = {1};    // 1/w drawn from these
  std::string bound_style = "unbounded";    // unbounded | box | speclu-like
  int num_costs = 1;
};

// Deterministic pseudorandom instance; the input solution is always a family
// member, and generated bounds always admit p = 0 per element (which keeps the
// interval reduction exact — see normalize_bounds_and_order).
Instance generate_instance(const GenConfig& config);

// Solution emission. Spans and deviations are reported in the caller's
// original weight scale.
std::string serialize_solution(const Instance& inst, const PipelineOutcome& outcome,
                               bool include_trace);
std::string serialize_certificate(const Instance& inst, const MinMaxCertificate& cert);
std::string serialize_trace(const std::vector<std::string>& ids, const SolveTrace& trace);

}  // namespace invspan
