#include "pblock/metrics.hpp"

#include "pblock/error.hpp"

namespace pblock {

ConfusionCounts confusion(const PairSet& candidates, const GroundTruth& truth, std::uint64_t n) {
  if (truth.n_records != n) throw Error("metrics", ErrorCode::Metric, "truth built for a different record count");
  if (candidates.max_index() >= static_cast<std::int64_t>(n) ||
      truth.match_pairs.max_index() >= static_cast<std::int64_t>(n)) {
    throw Error("metrics", ErrorCode::Metric, "pair references a record outside the corpus");
  }
  ConfusionCounts c;
  c.cl = candidates.intersection_size(truth.match_pairs);
  c.fp = candidates.size() - c.cl;
  c.fn = truth.match_pairs.size() - c.cl;
  c.cnl = pair_count(n) - c.cl - c.fp - c.fn;
  return c;
}

RecallPrecision recall_precision(const ConfusionCounts& counts) {
  RecallPrecision rp;
  const auto true_links = counts.cl + counts.fn;
  const auto estimated_links = counts.cl + counts.fp;
  rp.recall = true_links == 0 ? 1.0 : static_cast<double>(counts.cl) / static_cast<double>(true_links);
  rp.precision = estimated_links == 0 ? 1.0 : static_cast<double>(counts.cl) / static_cast<double>(estimated_links);
  return rp;
}

double reduction_ratio(std::uint64_t candidate_count, std::uint64_t n) {
  if (n < 2) throw Error("metrics", ErrorCode::Metric, "reduction ratio needs at least two records");
  const auto all = pair_count(n);
  if (candidate_count > all) throw Error("metrics", ErrorCode::Metric, "more candidates than record pairs");
  return 1.0 - static_cast<double>(candidate_count) / static_cast<double>(all);
}

double reduction_ratio(const PairSet& candidates, std::uint64_t n) {
  if (candidates.max_index() >= static_cast<std::int64_t>(n)) {
    throw Error("metrics", ErrorCode::Metric, "pair references a record outside the corpus");
  }
  return reduction_ratio(candidates.size(), n);
}

void score(BlockingReport& report, const PairSet& candidates, const std::optional<GroundTruth>& truth,
           std::uint64_t n) {
  report.records = n;
  report.candidate_pairs = candidates.size();
  report.rr = reduction_ratio(candidates, n);
  if (truth) {
    report.counts = confusion(candidates, *truth, n);
    const auto rp = recall_precision(*report.counts);
    report.recall = rp.recall;
    report.precision = rp.precision;
  }
}

nlohmann::ordered_json to_json(const BlockingReport& report, bool include_timings) {
  nlohmann::ordered_json j;
  j["engine"] = report.engine;
  j["parameters"] = report.parameters;
  j["records"] = report.records;
  j["candidate_pairs"] = report.candidate_pairs;
  j["skipped_records"] = report.skipped_records;
  if (report.counts) {
    j["counts"] = {{"CL", report.counts->cl}, {"FN", report.counts->fn}, {"FP", report.counts->fp},
                   {"CNL", report.counts->cnl}};
    j["recall"] = report.recall;
    j["precision"] = report.precision;
  }
  j["rr"] = report.rr;
  j["counters"] = report.counters;
  if (include_timings) j["timings"] = report.timings;
  if (!report.ok()) j["error"] = report.error;
  return j;
}

}  // namespace pblock
