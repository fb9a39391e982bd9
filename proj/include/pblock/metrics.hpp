#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "pblock/corpus.hpp"
#include "pblock/pairs.hpp"

namespace pblock {

/// Pair-level confusion counts of a blocking against the truth.
struct ConfusionCounts {
  std::uint64_t cl = 0;   // correct links: candidate and true match
  std::uint64_t fn = 0;   // true match missed by the blocking
  std::uint64_t fp = 0;   // candidate that is not a true match
  std::uint64_t cnl = 0;  // neither

  std::uint64_t total() const { return cl + fn + fp + cnl; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

struct RecallPrecision {
  double recall = 1.0;
  double precision = 1.0;
};

/// Throws a metric error when a pair references an index >= n or when the
/// truth was built for a different record count.
ConfusionCounts confusion(const PairSet& candidates, const GroundTruth& truth, std::uint64_t n);

/// recall = CL / (CL + FN), precision = CL / (CL + FP). With no estimated
/// links precision is 1 (FDR = 0 by convention); with no true links recall is 1.
RecallPrecision recall_precision(const ConfusionCounts& counts);

/// 1 - |candidates| / (n (n - 1) / 2). Never looks at the truth.
/// Throws a metric error when n < 2.
double reduction_ratio(const PairSet& candidates, std::uint64_t n);
double reduction_ratio(std::uint64_t candidate_count, std::uint64_t n);

/// Outcome of one blocking run.
struct BlockingReport {
  std::string engine;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::uint64_t records = 0;
  std::uint64_t candidate_pairs = 0;
  std::optional<ConfusionCounts> counts;  // set when truth is available
  double recall = 0.0;
  double precision = 0.0;
  double rr = 0.0;
  std::uint64_t skipped_records = 0;  // records without a signature
  std::map<std::string, std::uint64_t> counters;
  std::map<std::string, double> timings;  // wall-clock seconds
  std::string error;                      // non-empty when the run failed

  bool ok() const { return error.empty(); }
};

/// Fills counts, recall, precision and rr from a candidate set.
void score(BlockingReport& report, const PairSet& candidates, const std::optional<GroundTruth>& truth,
           std::uint64_t n);

nlohmann::ordered_json to_json(const BlockingReport& report, bool include_timings = true);

}  // namespace pblock
