#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cdmm/coding.hpp"
#include "cdmm/decoding.hpp"

namespace cdmm {

/// Digit-op cost of one scalar multiplication between mantissas of
/// `digits_a` and `digits_b` base-B digits: n * ceil(log2(n+1)) with
/// n = max(digits_a, digits_b, 1). A concrete stand-in for the superlinear
/// big-number multiplication cost; only ratios across schemes are meaningful.
std::int64_t scalar_mul_cost(int digits_a, int digits_b);

struct TrafficLedger {
  std::int64_t upload_digits_per_server = 0;  // (#uploaded entries per server) x gamma_u
  std::int64_t download_digits_total = 0;     // (#downloaded entries) x gamma_y
  std::int64_t multiplications = 0;           // scalar multiplications across all servers
  std::int64_t digit_mul_cost = 0;            // sum of scalar_mul_cost over fixed-point multiplies
};

struct ClusterRun {
  SchemeSpec spec;
  std::vector<EncodedTask> tasks;     // one per server, stragglers included
  std::vector<ServerAnswer> answers;  // non-straggler answers, ascending server id
  std::set<int> straggler_ids;
  TrafficLedger traffic;
  std::vector<std::string> warnings;

  /// Structured text export: spec, stragglers, per-server digit counts, and
  /// answers at full precision.
  std::string transcript() const;
};

/// Exact share product (fixed point or rational, matching the task payload),
/// truncated entrywise to gamma_y when a download budget is set. Multiplication
/// and digit-cost counters accumulate into `ledger` when provided; digit costs
/// are only defined for fixed-point payloads. `base` is used only when an
/// exact payload meets a download budget.
ServerAnswer server_compute(const EncodedTask& task, DigitBudget gamma_y, TrafficLedger* ledger = nullptr,
                            int base = 10);

/// Encodes per the scheme, runs every non-straggler server, and fills the
/// traffic ledger. Deterministic in (u, v, spec, stragglers). Throws
/// ThresholdError when too few servers are responsive, std::invalid_argument
/// on a malformed spec or straggler set.
ClusterRun run_cluster(const RatMatrix& u, const RatMatrix& v, const SchemeSpec& spec,
                       const std::set<int>& stragglers = {});

/// Decodes a finished run with the scheme's own decoder.
DecodeResult decode_run(const ClusterRun& run);

}  // namespace cdmm
