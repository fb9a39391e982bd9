#include "pblock/vectorize.hpp"

#include <algorithm>
#include <cmath>

#include "pblock/error.hpp"
#include "pblock/parallel.hpp"

namespace pblock {

double WeightedShingleVector::max_weight() const {
  return weights.empty() ? 0.0 : *std::max_element(weights.begin(), weights.end());
}

WeightedShingleVector WeightedShingleVector::from_entries(RecordIndex record,
                                                          std::vector<std::pair<FeatureIndex, double>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  WeightedShingleVector v;
  v.record = record;
  for (std::size_t i = 0; i < entries.size();) {
    double sum = 0.0;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].first == entries[i].first; ++j) {
      if (!(entries[j].second >= 0.0)) throw Error("vectorize", ErrorCode::Config, "negative weight");
      sum += entries[j].second;
    }
    if (sum > 0.0) {
      v.features.push_back(entries[i].first);
      v.weights.push_back(sum);
    }
    i = j;
  }
  return v;
}

IdfTable compute_idf(std::span<const ShingleSet> documents, std::size_t universe) {
  IdfTable table;
  table.documents = documents.size();
  table.df.assign(universe, 0);
  table.idf.assign(universe, 0.0);
  for (const auto& doc : documents) {
    for (auto f : doc.features) {
      if (f >= universe) throw Error("vectorize", ErrorCode::Config, "feature index outside universe");
      ++table.df[f];
    }
  }
  const auto n = static_cast<double>(table.documents);
  for (std::size_t f = 0; f < universe; ++f) {
    if (table.df[f] > 0) table.idf[f] = std::log(n / static_cast<double>(table.df[f]));
  }
  return table;
}

WeightedShingleVector vectorize(const ShingleSet& shingles, const IdfTable& idf, const VectorizeOptions& options) {
  WeightedShingleVector v;
  v.record = shingles.record;
  for (std::size_t i = 0; i < shingles.features.size(); ++i) {
    const auto f = shingles.features[i];
    if (f >= idf.size()) throw Error("vectorize", ErrorCode::Config, "feature index outside idf table");
    const double count = shingles.counts.empty() ? 1.0 : static_cast<double>(shingles.counts[i]);
    const double w = count * idf.idf[f];
    if (w > 0.0) {
      v.features.push_back(f);
      v.weights.push_back(w);
    }
  }
  if (options.normalize && !v.empty()) {
    double norm = 0.0;
    for (double w : v.weights) norm += w * w;
    norm = std::sqrt(norm);
    for (double& w : v.weights) w /= norm;
  }
  return v;
}

std::vector<WeightedShingleVector> vectorize_all(std::span<const ShingleSet> shingles, const IdfTable& idf,
                                                 const VectorizeOptions& options, std::size_t workers) {
  std::vector<WeightedShingleVector> out(shingles.size());
  parallel_for(shingles.size(), workers, [&](std::size_t i) { out[i] = vectorize(shingles[i], idf, options); });
  return out;
}

}  // namespace pblock
