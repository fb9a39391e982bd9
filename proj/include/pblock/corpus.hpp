#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pblock/pairs.hpp"

namespace pblock {

struct Field {
  std::string name;
  std::string value;
  friend bool operator==(const Field&, const Field&) = default;
};

struct Record {
  std::string id;
  std::vector<Field> fields;
  std::optional<std::string> entity_label;

  /// Field values joined by single spaces, in field order.
  std::string text() const;
  bool has_content() const;

  friend bool operator==(const Record&, const Record&) = default;
};

/// True match pairs, stored as record-index pairs of the owning corpus.
struct GroundTruth {
  PairSet match_pairs;
  std::uint64_t n_records = 0;

  /// n_M: number of truly matching pairs.
  std::uint64_t match_count() const { return match_pairs.size(); }
  /// n_N: every other pair of distinct records.
  std::uint64_t non_match_count() const { return pair_count(n_records) - match_pairs.size(); }
};

/// Immutable collection of records with unique ids.
class Corpus {
 public:
  Corpus() = default;
  /// Throws an ingestion error on duplicate ids or records without content.
  explicit Corpus(std::vector<Record> records);

  const std::vector<Record>& records() const { return records_; }
  const Record& operator[](std::size_t i) const { return records_[i]; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::optional<RecordIndex> index_of(std::string_view id) const;
  bool has_labels() const;

  const std::optional<GroundTruth>& truth() const { return truth_; }
  /// Throws a truth error if the truth references records outside the corpus.
  void set_truth(GroundTruth truth);

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.records_ == b.records_; }

 private:
  std::vector<Record> records_;
  std::unordered_map<std::string, RecordIndex> index_;
  std::optional<GroundTruth> truth_;
};

struct LoadOptions {
  /// Text columns to ingest, in order. Empty means every column other than
  /// the id and label columns.
  std::vector<std::string> schema;
  std::optional<std::string> label_column;
  /// When unset, a column named "id" is used if present, otherwise records
  /// are numbered by row ordinal starting at 1.
  std::optional<std::string> id_column;
};

Corpus load_corpus(std::istream& in, const LoadOptions& options);
Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options);

/// Writes id, field columns and (if any record is labelled) an "entity" column.
void write_corpus(std::ostream& out, const Corpus& corpus);

/// All unordered pairs of records sharing an entity label.
GroundTruth derive_truth(const Corpus& corpus);

/// Two-column (id_a,id_b) pairs file; an optional header row is detected when
/// its values are not both known record ids.
GroundTruth load_truth_pairs(std::istream& in, const Corpus& corpus);
GroundTruth load_truth_pairs(const std::filesystem::path& path, const Corpus& corpus);

/// Writes pairs as "id_a,id_b" rows with the lexicographically smaller id first.
void write_pairs(std::ostream& out, const PairSet& pairs, const Corpus& corpus);
/// Reads pairs written by write_pairs (or any two-column id file); unknown
/// ids raise a metric error.
PairSet read_pairs(std::istream& in, const Corpus& corpus);

/// How synthetic name tokens are drawn.
enum class NameModel {
  /// Uniform random letters, 5 to 9 per token. Unrelated records rarely share
  /// a shingle.
  Letters,
  /// Pronounceable onset-vowel-coda syllables. Shingles like "AAN" recur
  /// across many unrelated names.
  Syllables,
};

struct SynthConfig {
  std::size_t n_base = 1000;
  double dup_rate = 0.1;
  std::size_t max_dups = 1;
  double noise = 0.05;
  std::uint64_t seed = 1;
  NameModel name_model = NameModel::Letters;

  void validate() const;
};

std::string_view to_string(NameModel model);
NameModel parse_name_model(std::string_view name);

/// Field names produced by generate_synthetic.
const std::vector<std::string>& synthetic_schema();

/// Corpus of n_base distinct entities; exactly round(dup_rate * n_base) of
/// them receive 1..max_dups noisy copies. Every record carries its entity
/// label and the ground truth is attached. Pure function of the config.
Corpus generate_synthetic(const SynthConfig& config);

}  // namespace pblock
