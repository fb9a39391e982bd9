#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "pblock/minhash.hpp"

namespace pblock {

/// Densified one permutation hashing parameters. k = K * L bins are filled
/// from a single hash of each element.
struct DophConfig {
  std::size_t K = 15;
  std::size_t L = 100;
  std::uint64_t seed = 1;
  /// Output space of the single hash function; must be a multiple of k.
  /// 0 selects k * 2^20, i.e. bins of width 2^20.
  std::uint64_t range = 0;

  std::size_t bins() const { return K * L; }
  std::uint64_t effective_range() const { return range ? range : static_cast<std::uint64_t>(bins()) << 20; }
  std::uint64_t bin_width() const { return effective_range() / bins(); }
  void validate() const;
};

/// Per-bin minimum offsets after one pass over a set.
struct OphState {
  static constexpr std::uint64_t kEmpty = std::numeric_limits<std::uint64_t>::max();

  std::vector<std::uint64_t> slots;  // offset within the bin, or kEmpty
  std::uint64_t width = 0;           // bin width w

  std::size_t occupied() const;
};

/// Hashes every element exactly once into [0, range) and keeps the minimum
/// offset in each of the k equal-width bins.
OphState oph_bin(std::span<const FeatureIndex> features, const DophConfig& config,
                 HashCounters* counters = nullptr);

/// Fills each empty bin j from the first non-empty bin found scanning
/// j+1, j+2, ... circularly: value = offset + t * w for distance t.
/// Occupied bins keep their offset. Throws a densification error when every
/// bin is empty.
HashSignature densify(const OphState& state, HashCounters* counters = nullptr);

/// oph_bin followed by densify. Throws a signature error on an empty set.
HashSignature oph_signature(const ShingleSet& s, const DophConfig& config, HashCounters* counters = nullptr);
HashSignature oph_signature(std::span<const FeatureIndex> features, const DophConfig& config,
                            HashCounters* counters = nullptr);

struct WeightedSamplingConfig {
  /// Every component divided by this must be at most 1.
  double normalizer = 1.0;
  /// Resolution for the exact T-expansion: components are integer multiples of delta.
  double delta = 1.0;
  /// Largest integer multiple, so max component = M * delta.
  std::uint32_t M = 1;
  /// Shared corpus-wide sampling seed.
  std::uint64_t seed = 1;

  void validate() const;

  /// Sampling config whose normalizer is the largest component in `vectors`.
  /// delta and M are set so the maximum is exactly M * delta with M = 1.
  static WeightedSamplingConfig for_vectors(std::span<const WeightedShingleVector> vectors, std::uint64_t seed);
};

/// Keeps feature i iff u_i < x_i / normalizer, where u_i in [0, 1) is a hash of
/// (seed, i). The same u_i is used for every record, which is what makes
/// Jaccard of the samples track the weighted Jaccard of the vectors.
ShingleSet sample_weighted(const WeightedShingleVector& x, const WeightedSamplingConfig& config,
                           HashCounters* counters = nullptr);

/// Exact binary expansion T(x) over a universe of M * universe bits: feature
/// (i, j) = i * M + j is present iff j < x_i / delta. Throws a resolution error
/// when a component is not an integer multiple of delta or exceeds M * delta,
/// and a config error when M * universe exceeds 10^6.
ShingleSet t_expand(const WeightedShingleVector& x, const WeightedSamplingConfig& config, std::size_t universe);

/// DOPH of the weighted sample, in O(d + K*L) for support size d. Throws a
/// signature error when the sample is empty.
HashSignature weighted_doph_signature(const WeightedShingleVector& x, const WeightedSamplingConfig& sampling,
                                      const DophConfig& doph, HashCounters* counters = nullptr);

/// One row per record: id followed by the k signature values.
void write_signatures_csv(std::ostream& out, std::span<const std::string> ids,
                          std::span<const HashSignature> signatures);

struct SignatureFile {
  std::vector<std::string> ids;
  std::vector<HashSignature> signatures;
};

/// Little-endian binary layout: "PBSG", u32 version (1), u64 count, u64 k, then
/// per record a u32 id length, the id bytes and k u64 values.
void write_signatures_binary(std::ostream& out, std::span<const std::string> ids,
                             std::span<const HashSignature> signatures);
SignatureFile read_signatures_binary(std::istream& in);

}  // namespace pblock
