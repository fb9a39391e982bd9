#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pblock {

/// Index of a record within its corpus.
using RecordIndex = std::uint32_t;

/// Unordered record pair with first < second.
struct RecordPair {
  RecordIndex first;
  RecordIndex second;

  static RecordPair canonical(RecordIndex a, RecordIndex b) {
    return a < b ? RecordPair{a, b} : RecordPair{b, a};
  }
  std::uint64_t key() const { return (std::uint64_t{first} << 32) | second; }
  static RecordPair from_key(std::uint64_t key) {
    return {static_cast<RecordIndex>(key >> 32), static_cast<RecordIndex>(key & 0xffffffffu)};
  }
  friend bool operator==(const RecordPair&, const RecordPair&) = default;
};

/// Deduplicated, sorted set of unordered record pairs. Used both for blocking
/// output (candidate pairs) and for ground-truth match pairs.
class PairSet {
 public:
  PairSet() = default;

  /// Canonicalizes, sorts and deduplicates. Self-pairs are dropped.
  static PairSet from_pairs(std::span<const RecordPair> pairs);
  /// Takes packed keys (already canonical); sorts and deduplicates.
  static PairSet from_keys(std::vector<std::uint64_t> keys);

  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  bool contains(RecordPair p) const;
  bool contains(RecordIndex a, RecordIndex b) const { return contains(RecordPair::canonical(a, b)); }

  /// Largest record index referenced, or -1 when empty.
  std::int64_t max_index() const;

  std::vector<RecordPair> pairs() const;
  std::span<const std::uint64_t> keys() const { return keys_; }

  /// Size of the intersection with another set (linear merge).
  std::size_t intersection_size(const PairSet& other) const;
  bool is_subset_of(const PairSet& other) const;

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::vector<std::uint64_t> keys_;
};

/// Union of two pair sets.
PairSet unite(const PairSet& a, const PairSet& b);

/// Incremental builder that bounds memory by compacting periodically.
class PairAccumulator {
 public:
  void add(RecordIndex a, RecordIndex b) {
    if (a == b) return;
    raw_.push_back(RecordPair::canonical(a, b).key());
    if (raw_.size() >= compact_at_) compact();
  }
  /// All pairs within a group of records.
  void add_clique(std::span<const RecordIndex> members);
  PairSet finish() &&;

 private:
  void compact();

  std::vector<std::uint64_t> raw_;
  std::size_t unique_prefix_ = 0;
  std::size_t compact_at_ = 1u << 22;
};

/// n choose 2.
constexpr std::uint64_t pair_count(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

}  // namespace pblock
