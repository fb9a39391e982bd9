#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pblock/corpus.hpp"

namespace pblock {

/// Dense index of a shingle within a Vocabulary, in [0, D).
using FeatureIndex = std::uint32_t;

struct ShingleConfig {
  std::size_t k = 2;
  /// Shingle each whitespace-separated token on its own (no shingle spans a
  /// token boundary). When false the whole canonical record text is shingled.
  bool per_token = true;
  bool uppercase = true;
  /// Drop every ASCII character that is not a letter or digit. Non-ASCII code
  /// points are kept, so non-Latin scripts survive canonicalization.
  bool strip_non_alnum = true;
  /// Frozen-vocabulary lookups of unseen shingles throw instead of dropping.
  bool error_on_unseen = false;

  void validate() const;
};

/// Canonical tokens of `text`. In whole-string mode the result has at most one
/// element. Empty tokens are dropped, so "" yields [].
std::vector<std::string> canonicalize(std::string_view text, const ShingleConfig& config);

/// All k-grams of the canonical text, in order and with repeats. k is counted
/// in UTF-8 code points. A token shorter than k contributes itself once.
std::vector<std::string> shingle_strings(std::string_view text, const ShingleConfig& config);

/// Bijection between shingle strings and contiguous feature indices.
class Vocabulary {
 public:
  std::optional<FeatureIndex> find(std::string_view shingle) const;
  FeatureIndex intern(std::string_view shingle);
  const std::string& shingle(FeatureIndex index) const { return shingles_.at(index); }
  /// Universe size D.
  std::size_t size() const { return shingles_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::unordered_map<std::string, FeatureIndex, Hash, std::equal_to<>> index_;
  std::vector<std::string> shingles_;
};

/// Shingles of one record as a sorted feature set with per-feature counts.
struct ShingleSet {
  RecordIndex record = 0;
  std::vector<FeatureIndex> features;  // strictly increasing
  std::vector<std::uint32_t> counts;   // multiplicity of features[i]

  std::size_t size() const { return features.size(); }
  bool empty() const { return features.empty(); }

  static ShingleSet from_features(RecordIndex record, std::vector<FeatureIndex> features);
};

/// Shingles `record` against a frozen vocabulary. Unseen shingles are dropped
/// unless config.error_on_unseen is set.
ShingleSet shingle_record(const Record& record, RecordIndex index, const ShingleConfig& config,
                          const Vocabulary& vocab);

/// Building mode: unseen shingles are added to `vocab`.
ShingleSet shingle_record_extending(const Record& record, RecordIndex index, const ShingleConfig& config,
                                    Vocabulary& vocab);

/// Vocabulary of exactly the distinct shingles in the corpus, indexed in
/// order of first occurrence. Throws a vocabulary error when there are none.
Vocabulary build_vocabulary(const Corpus& corpus, const ShingleConfig& config);

/// shingle_record over every record, in parallel against the frozen vocabulary.
std::vector<ShingleSet> shingle_corpus(const Corpus& corpus, const ShingleConfig& config,
                                       const Vocabulary& vocab, std::size_t workers = 1);

}  // namespace pblock
