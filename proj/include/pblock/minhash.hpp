#pragma once

#include <cstdint>
#include <vector>

#include "pblock/shingle.hpp"
#include "pblock/vectorize.hpp"

namespace pblock {

/// k hash values of one record, as produced by a hash engine.
using HashSignature = std::vector<std::uint64_t>;

/// Instrumentation for the hashing engines. Engines only ever add to a
/// caller-owned instance; parallel callers keep one per worker and merge.
struct HashCounters {
  std::uint64_t element_hashes = 0;  // hash evaluations over set elements
  std::uint64_t sampling_draws = 0;  // per-feature uniforms drawn by weighted sampling
  std::uint64_t slot_visits = 0;     // signature slots initialized or densified

  HashCounters& operator+=(const HashCounters& o) {
    element_hashes += o.element_hashes;
    sampling_draws += o.sampling_draws;
    slot_visits += o.slot_visits;
    return *this;
  }
  std::uint64_t total() const { return element_hashes + sampling_draws + slot_visits; }
};

/// Seeded family of 64-bit hash functions over feature indices. Each member
/// stands in for a random permutation of the universe; min-wise independence
/// holds only approximately.
class HashFamily {
 public:
  explicit HashFamily(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t key(std::size_t i) const;
  std::uint64_t operator()(std::size_t i, FeatureIndex element) const;
  static std::uint64_t apply(std::uint64_t key, FeatureIndex element);
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// |a ∩ b| / |a ∪ b| over feature sets. Two empty sets are treated as
/// identical (1.0) and a warning is emitted.
double jaccard(const ShingleSet& a, const ShingleSet& b);

/// Σ min(x_i, y_i) / Σ max(x_i, y_i). Two zero vectors give 1.0 with a warning.
double weighted_jaccard(const WeightedShingleVector& x, const WeightedShingleVector& y);

/// 1 - ||x - y||_1 / Σ max(x_i, y_i); algebraically equal to weighted_jaccard.
double weighted_jaccard_l1(const WeightedShingleVector& x, const WeightedShingleVector& y);

/// Classical minwise hashing: signature[i] = min over e in s of family(i, e).
/// Costs |s| * count hash evaluations. Throws a signature error on empty s.
HashSignature naive_minhash(const ShingleSet& s, const HashFamily& family, std::size_t count,
                            HashCounters* counters = nullptr);

/// Fraction of positions where two equal-length signatures agree.
double collision_rate(const HashSignature& a, const HashSignature& b);

}  // namespace pblock
