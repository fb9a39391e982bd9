#pragma once

#include <span>
#include <vector>

#include "pblock/shingle.hpp"

namespace pblock {

/// Sparse non-negative vector over the shingle universe. Entries are sorted by
/// feature and never hold an explicit zero.
struct WeightedShingleVector {
  RecordIndex record = 0;
  std::vector<FeatureIndex> features;
  std::vector<double> weights;

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }
  double max_weight() const;

  /// Builds from (feature, weight) entries in any order; duplicates are summed
  /// and zeros dropped. Negative weights are rejected with a config error.
  static WeightedShingleVector from_entries(RecordIndex record,
                                            std::vector<std::pair<FeatureIndex, double>> entries);
};

struct IdfTable {
  std::size_t documents = 0;
  std::vector<std::uint32_t> df;
  std::vector<double> idf;

  std::size_t size() const { return idf.size(); }
};

/// idf(f) = ln(n / df(f)); features that never occur get idf 0.
IdfTable compute_idf(std::span<const ShingleSet> documents, std::size_t universe);

struct VectorizeOptions {
  /// Scale each vector to unit L2 norm. Off by default.
  bool normalize = false;
};

/// weight(f) = count(f) * idf(f), zero weights omitted.
WeightedShingleVector vectorize(const ShingleSet& shingles, const IdfTable& idf,
                                const VectorizeOptions& options = {});

std::vector<WeightedShingleVector> vectorize_all(std::span<const ShingleSet> shingles, const IdfTable& idf,
                                                 const VectorizeOptions& options = {}, std::size_t workers = 1);

}  // namespace pblock
