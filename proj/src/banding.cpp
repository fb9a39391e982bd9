#include "pblock/banding.hpp"

#include <algorithm>
#include <numeric>

#include "pblock/error.hpp"
#include "pblock/hash.hpp"
#include "pblock/parallel.hpp"

namespace pblock {

std::uint64_t band_key(std::span<const std::uint64_t> band) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL ^ band.size();
  for (auto v : band) h = mix64(h ^ mix64(v));
  return h;
}

void BandKeys::set(std::size_t record, std::span<const std::uint64_t> signature, std::size_t K) {
  if (signature.size() != K * tables_) {
    throw Error("banding", ErrorCode::Banding,
                "signature length " + std::to_string(signature.size()) + " != K * L = " + std::to_string(K * tables_));
  }
  for (std::size_t j = 0; j < tables_; ++j) keys_[record * tables_ + j] = band_key(signature.subspan(j * K, K));
  present_[record] = 1;
}

BandTable build_table(const BandKeys& keys, std::size_t table) {
  std::vector<std::pair<std::uint64_t, RecordIndex>> entries;
  entries.reserve(keys.records());
  for (std::size_t r = 0; r < keys.records(); ++r) {
    if (keys.present(r)) entries.emplace_back(keys.key(r, table), static_cast<RecordIndex>(r));
  }
  std::sort(entries.begin(), entries.end());
  BandTable out;
  out.index = table;
  out.members.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i == 0 || entries[i].first != entries[i - 1].first) {
      if (i > 0) out.offsets.push_back(static_cast<std::uint32_t>(i));
      out.keys.push_back(entries[i].first);
    }
    out.members.push_back(entries[i].second);
  }
  if (!entries.empty()) out.offsets.push_back(static_cast<std::uint32_t>(entries.size()));
  return out;
}

std::vector<BandTable> build_tables(std::span<const HashSignature> signatures, const DophConfig& config,
                                    std::size_t workers) {
  config.validate();
  BandKeys keys(signatures.size(), config.L);
  parallel_for(signatures.size(), workers, [&](std::size_t r) { keys.set(r, signatures[r], config.K); });
  std::vector<BandTable> tables(config.L);
  parallel_for(config.L, workers, [&](std::size_t j) { tables[j] = build_table(keys, j); });
  return tables;
}

CandidatePairSet candidates(std::span<const BandTable> tables) {
  PairAccumulator acc;
  for (const auto& t : tables) {
    for (std::size_t b = 0; b < t.bucket_count(); ++b) acc.add_clique(t.bucket(b));
  }
  return std::move(acc).finish();
}

void BucketStats::add(const BandTable& table) {
  std::size_t largest = 0;
  for (std::size_t b = 0; b < table.bucket_count(); ++b) largest = std::max(largest, table.bucket(b).size());
  const double mean = table.bucket_count() == 0 ? 0.0
                                                : static_cast<double>(table.members.size()) /
                                                      static_cast<double>(table.bucket_count());
  max_per_table.push_back(largest);
  mean_per_table.push_back(mean);
  max_bucket = std::max(max_bucket, largest);
  mean_bucket = std::accumulate(mean_per_table.begin(), mean_per_table.end(), 0.0) /
                static_cast<double>(mean_per_table.size());
}

BucketStats max_bucket_stats(std::span<const BandTable> tables) {
  BucketStats stats;
  for (const auto& t : tables) stats.add(t);
  return stats;
}

CandidatePairSet collect_candidates(const BandKeys& keys, std::size_t workers, BucketStats* stats) {
  const std::size_t n_workers = std::min(resolve_workers(workers), std::max<std::size_t>(keys.tables(), 1));
  std::vector<PairAccumulator> accs(n_workers);
  std::vector<std::size_t> largest(keys.tables(), 0);
  std::vector<double> means(keys.tables(), 0.0);
  parallel_chunks(keys.tables(), n_workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      const auto table = build_table(keys, j);
      for (std::size_t b = 0; b < table.bucket_count(); ++b) {
        const auto bucket = table.bucket(b);
        largest[j] = std::max(largest[j], bucket.size());
        accs[w].add_clique(bucket);
      }
      means[j] = table.bucket_count() == 0 ? 0.0
                                           : static_cast<double>(table.members.size()) /
                                                 static_cast<double>(table.bucket_count());
    }
  });
  if (stats) {
    stats->max_per_table = largest;
    stats->mean_per_table = means;
    stats->max_bucket = largest.empty() ? 0 : *std::max_element(largest.begin(), largest.end());
    stats->mean_bucket =
        means.empty() ? 0.0 : std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(means.size());
  }
  PairSet result = std::move(accs[0]).finish();
  for (std::size_t w = 1; w < accs.size(); ++w) result = unite(result, std::move(accs[w]).finish());
  return result;
}

}  // namespace pblock
