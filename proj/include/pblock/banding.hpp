#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pblock/doph.hpp"
#include "pblock/pairs.hpp"

namespace pblock {

using CandidatePairSet = PairSet;

/// 64-bit fingerprint of one band (K consecutive signature values).
std::uint64_t band_key(std::span<const std::uint64_t> band);

/// Band keys for every record, row-major (record, table). Records without a
/// signature (e.g. empty shingle sets) are marked absent and never bucketed.
class BandKeys {
 public:
  BandKeys(std::size_t records, std::size_t tables)
      : tables_(tables), keys_(records * tables, 0), present_(records, 0) {}

  std::size_t records() const { return present_.size(); }
  std::size_t tables() const { return tables_; }
  bool present(std::size_t record) const { return present_[record] != 0; }
  std::uint64_t key(std::size_t record, std::size_t table) const { return keys_[record * tables_ + table]; }

  /// Stores the L band keys of `signature` (length K * L) for `record`.
  /// Distinct records may be set concurrently.
  void set(std::size_t record, std::span<const std::uint64_t> signature, std::size_t K);

 private:
  std::size_t tables_;
  std::vector<std::uint64_t> keys_;
  std::vector<std::uint8_t> present_;
};

/// One hash table: buckets sorted by key, members ascending within a bucket.
struct BandTable {
  std::size_t index = 0;
  std::vector<std::uint64_t> keys;
  std::vector<std::uint32_t> offsets{0};  // bucket b spans members[offsets[b], offsets[b+1])
  std::vector<RecordIndex> members;

  std::size_t bucket_count() const { return keys.size(); }
  std::span<const RecordIndex> bucket(std::size_t b) const {
    return std::span<const RecordIndex>(members).subspan(offsets[b], offsets[b + 1] - offsets[b]);
  }
};

BandTable build_table(const BandKeys& keys, std::size_t table);

/// L tables; record r goes into table j under the key of slots [jK, (j+1)K).
/// Throws a banding error when a signature is not K * L long.
std::vector<BandTable> build_tables(std::span<const HashSignature> signatures, const DophConfig& config,
                                    std::size_t workers = 1);

/// Union over every table and bucket of all within-bucket pairs.
CandidatePairSet candidates(std::span<const BandTable> tables);

struct BucketStats {
  std::vector<std::size_t> max_per_table;
  std::vector<double> mean_per_table;
  std::size_t max_bucket = 0;
  double mean_bucket = 0.0;  // mean bucket size over all tables

  void add(const BandTable& table);
};

BucketStats max_bucket_stats(std::span<const BandTable> tables);

/// Streams tables one at a time (built from `keys`), so only one table per
/// worker is alive. Output is independent of the worker count.
CandidatePairSet collect_candidates(const BandKeys& keys, std::size_t workers = 1, BucketStats* stats = nullptr);

}  // namespace pblock
