#include "pblock/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "pblock/csv.hpp"
#include "pblock/error.hpp"
#include "pblock/hash.hpp"

namespace pblock {

namespace {

constexpr std::string_view kModule = "corpus";

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(kModule, code, what); }

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

std::string Record::text() const {
  std::string out;
  for (const auto& f : fields) {
    if (f.value.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += f.value;
  }
  return out;
}

bool Record::has_content() const {
  return std::any_of(fields.begin(), fields.end(), [](const Field& f) { return !f.value.empty(); });
}

Corpus::Corpus(std::vector<Record> records) : records_(std::move(records)) {
  if (records_.size() > std::numeric_limits<RecordIndex>::max()) {
    fail(ErrorCode::Ingestion, "too many records");
  }
  index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    if (!r.has_content()) fail(ErrorCode::Ingestion, "record '" + r.id + "' has no non-empty field");
    if (!index_.emplace(r.id, static_cast<RecordIndex>(i)).second) {
      fail(ErrorCode::Ingestion, "duplicate record id '" + r.id + "'");
    }
  }
}

std::optional<RecordIndex> Corpus::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Corpus::has_labels() const {
  return !records_.empty() &&
         std::all_of(records_.begin(), records_.end(), [](const Record& r) { return r.entity_label.has_value(); });
}

void Corpus::set_truth(GroundTruth truth) {
  if (truth.n_records != records_.size()) fail(ErrorCode::Truth, "truth record count does not match corpus");
  if (truth.match_pairs.max_index() >= static_cast<std::int64_t>(records_.size())) {
    fail(ErrorCode::Truth, "truth references a record outside the corpus");
  }
  truth_ = std::move(truth);
}

Corpus load_corpus(std::istream& in, const LoadOptions& options) {
  csv::Reader reader(in);
  csv::Row header;
  if (!reader.next(header)) fail(ErrorCode::Ingestion, "empty file");

  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  auto require = [&](const std::string& name) {
    auto c = column(name);
    if (!c) fail(ErrorCode::Schema, "missing column '" + name + "'");
    return *c;
  };

  std::optional<std::size_t> id_col;
  if (options.id_column) {
    id_col = require(*options.id_column);
  } else {
    id_col = column("id");
  }
  std::optional<std::size_t> label_col;
  if (options.label_column) label_col = require(*options.label_column);

  std::vector<std::size_t> field_cols;
  if (options.schema.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != id_col && c != label_col) field_cols.push_back(c);
    }
  } else {
    for (const auto& name : options.schema) field_cols.push_back(require(name));
  }
  if (field_cols.empty()) fail(ErrorCode::Schema, "no text columns to ingest");

  std::vector<Record> records;
  csv::Row row;
  while (reader.next(row)) {
    if (row.size() != header.size()) {
      fail(ErrorCode::Ingestion, "line " + std::to_string(reader.line()) + ": expected " +
                                     std::to_string(header.size()) + " columns, got " +
                                     std::to_string(row.size()));
    }
    Record rec;
    rec.id = id_col ? row[*id_col] : std::to_string(records.size() + 1);
    if (rec.id.empty()) fail(ErrorCode::Ingestion, "line " + std::to_string(reader.line()) + ": empty id");
    for (auto c : field_cols) rec.fields.push_back({header[c], row[c]});
    if (label_col && !row[*label_col].empty()) rec.entity_label = row[*label_col];
    records.push_back(std::move(rec));
  }
  if (records.empty()) fail(ErrorCode::Ingestion, "no data rows");
  Corpus corpus(std::move(records));
  if (label_col) corpus.set_truth(derive_truth(corpus));
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  auto in = open_input(path);
  return load_corpus(in, options);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  if (corpus.empty()) return;
  const bool labelled = std::any_of(corpus.records().begin(), corpus.records().end(),
                                    [](const Record& r) { return r.entity_label.has_value(); });
  csv::Row header{"id"};
  for (const auto& f : corpus[0].fields) header.push_back(f.name);
  if (labelled) header.push_back("entity");
  csv::write_row(out, header);
  for (const auto& r : corpus.records()) {
    csv::Row row{r.id};
    for (const auto& f : r.fields) row.push_back(f.value);
    if (labelled) row.push_back(r.entity_label.value_or(""));
    csv::write_row(out, row);
  }
}

GroundTruth derive_truth(const Corpus& corpus) {
  std::map<std::string, std::vector<RecordIndex>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& label = corpus[i].entity_label;
    if (!label) fail(ErrorCode::Truth, "record '" + corpus[i].id + "' has no entity label");
    groups[*label].push_back(static_cast<RecordIndex>(i));
  }
  PairAccumulator acc;
  for (const auto& [label, members] : groups) acc.add_clique(members);
  return GroundTruth{std::move(acc).finish(), corpus.size()};
}

namespace {

PairSet read_id_pairs(std::istream& in, const Corpus& corpus, ErrorCode code) {
  csv::Reader reader(in);
  csv::Row row;
  std::vector<RecordPair> pairs;
  bool first = true;
  while (reader.next(row)) {
    if (row.size() != 2) fail(code, "line " + std::to_string(reader.line()) + ": expected two ids");
    auto a = corpus.index_of(row[0]);
    auto b = corpus.index_of(row[1]);
    if (first && !a && !b) {
      first = false;  // header row
      continue;
    }
    first = false;
    if (!a || !b) fail(code, "unknown record id '" + (!a ? row[0] : row[1]) + "'");
    if (*a == *b) fail(code, "self pair for id '" + row[0] + "'");
    pairs.push_back(RecordPair::canonical(*a, *b));
  }
  return PairSet::from_pairs(pairs);
}

}  // namespace

GroundTruth load_truth_pairs(std::istream& in, const Corpus& corpus) {
  return GroundTruth{read_id_pairs(in, corpus, ErrorCode::Truth), corpus.size()};
}

GroundTruth load_truth_pairs(const std::filesystem::path& path, const Corpus& corpus) {
  auto in = open_input(path);
  return load_truth_pairs(in, corpus);
}

PairSet read_pairs(std::istream& in, const Corpus& corpus) {
  return read_id_pairs(in, corpus, ErrorCode::Metric);
}

void write_pairs(std::ostream& out, const PairSet& pairs, const Corpus& corpus) {
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  rows.reserve(pairs.size());
  for (auto key : pairs.keys()) {
    auto p = RecordPair::from_key(key);
    std::string_view a = corpus[p.first].id;
    std::string_view b = corpus[p.second].id;
    if (b < a) std::swap(a, b);
    rows.emplace_back(a, b);
  }
  std::sort(rows.begin(), rows.end());
  out << "id_a,id_b\n";
  for (const auto& [a, b] : rows) out << csv::escape(a) << ',' << csv::escape(b) << '\n';
}

// --- synthetic corpora -------------------------------------------------------

void SynthConfig::validate() const {
  auto bad = [](const std::string& what) { throw Error(kModule, ErrorCode::Config, what); };
  if (n_base == 0) bad("n_base must be positive");
  if (!(dup_rate >= 0.0 && dup_rate <= 1.0)) bad("dup_rate must lie in [0, 1]");
  if (max_dups == 0) bad("max_dups must be positive");
  if (!(noise >= 0.0 && noise <= 1.0)) bad("noise must lie in [0, 1]");
}

std::string_view to_string(NameModel model) {
  return model == NameModel::Letters ? "letters" : "syllables";
}

NameModel parse_name_model(std::string_view name) {
  if (name == "letters") return NameModel::Letters;
  if (name == "syllables") return NameModel::Syllables;
  throw Error(kModule, ErrorCode::Config, "unknown name model '" + std::string(name) + "'");
}

const std::vector<std::string>& synthetic_schema() {
  static const std::vector<std::string> schema{"given_name", "father_name", "family_name"};
  return schema;
}

namespace {

constexpr std::string_view kOnsets[] = {"b", "d", "f", "g", "h", "j", "k", "kh", "l", "m", "n",
                                        "q", "r", "s", "sh", "t", "th", "w", "y", "z", "gh", "dh"};
constexpr std::string_view kVowels[] = {"a", "i", "u", "aa", "ee", "ou", "ai", "e", "o"};
constexpr std::string_view kCodas[] = {"", "", "", "", "n", "m", "r", "l", "d", "s", "b", "f", "h", "t"};

template <std::size_t N>
std::string_view pick(Rng& rng, const std::string_view (&table)[N]) {
  return table[rng.below(N)];
}

std::string make_letters_name(Rng& rng) {
  const std::size_t length = 5 + rng.below(5);
  std::string name;
  for (std::size_t i = 0; i < length; ++i) name.push_back(static_cast<char>('a' + rng.below(26)));
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

std::string make_syllable_name(Rng& rng) {
  const std::size_t syllables = 2 + rng.below(2);
  std::string name;
  for (std::size_t s = 0; s < syllables; ++s) {
    name += pick(rng, kOnsets);
    name += pick(rng, kVowels);
    if (s + 1 < syllables || rng.bernoulli(0.5)) name += pick(rng, kCodas);
  }
  name[0] = static_cast<char>(name[0] - 'a' + 'A');
  return name;
}

std::vector<std::string> make_pool(Rng& rng, std::size_t size, NameModel model) {
  std::vector<std::string> pool;
  pool.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    pool.push_back(model == NameModel::Letters ? make_letters_name(rng) : make_syllable_name(rng));
  }
  return pool;
}

char random_letter(Rng& rng, char avoid) {
  char c;
  do {
    c = static_cast<char>('a' + rng.below(26));
  } while (c == avoid);
  return c;
}

/// Per-character corruption: with probability `rate` a position is substituted,
/// deleted, or transposed with its neighbour (uniform choice).
std::string corrupt(std::string s, double rate, Rng& rng) {
  if (rate <= 0.0) return s;
  std::string out;
  out.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!rng.bernoulli(rate)) {
      out.push_back(s[i]);
      continue;
    }
    switch (rng.below(3)) {
      case 0:
        out.push_back(random_letter(rng, s[i]));
        break;
      case 1:
        break;
      default:
        if (i + 1 < s.size()) {
          out.push_back(s[i + 1]);
          out.push_back(s[i]);
          ++i;
        } else if (!out.empty()) {
          std::swap(out.back(), s[i]);
          out.push_back(s[i]);
        } else {
          out.push_back(random_letter(rng, s[i]));
        }
        break;
    }
  }
  return out;
}

std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

}  // namespace

Corpus generate_synthetic(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  const auto& schema = synthetic_schema();
  auto given_pool = make_pool(rng, std::max<std::size_t>(64, config.n_base / 2), config.name_model);
  auto family_pool = make_pool(rng, std::max<std::size_t>(64, config.n_base / 2), config.name_model);

  struct Entity {
    std::vector<std::string> values;
  };
  std::vector<Entity> entities(config.n_base);
  for (auto& e : entities) {
    e.values = {given_pool[rng.below(given_pool.size())], given_pool[rng.below(given_pool.size())],
                family_pool[rng.below(family_pool.size())]};
  }

  // Exactly round(dup_rate * n_base) entities are duplicated.
  const auto n_dup = static_cast<std::size_t>(std::llround(config.dup_rate * static_cast<double>(config.n_base)));
  std::vector<std::size_t> order(config.n_base);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < n_dup; ++i) std::swap(order[i], order[i + rng.below(config.n_base - i)]);

  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  rows.reserve(config.n_base + n_dup * config.max_dups);
  for (std::size_t e = 0; e < config.n_base; ++e) rows.emplace_back(e, entities[e].values);
  std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_dup));
  for (std::size_t d = 0; d < n_dup; ++d) {
    const auto e = order[d];
    const auto copies = 1 + rng.below(config.max_dups);
    for (std::size_t c = 0; c < copies; ++c) {
      std::vector<std::string> values;
      for (const auto& v : entities[e].values) values.push_back(corrupt(v, config.noise, rng));
      if (std::all_of(values.begin(), values.end(), [](const std::string& v) { return v.empty(); })) {
        values[0] = entities[e].values[0];
      }
      rows.emplace_back(e, std::move(values));
    }
  }

  // Shuffle so duplicates are not adjacent to their originals.
  for (std::size_t i = rows.size(); i > 1; --i) std::swap(rows[i - 1], rows[rng.below(i)]);

  std::vector<Record> records;
  records.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Record r;
    r.id = padded("r", i + 1, 6);
    for (std::size_t f = 0; f < schema.size(); ++f) r.fields.push_back({schema[f], rows[i].second[f]});
    r.entity_label = padded("e", rows[i].first + 1, 6);
    records.push_back(std::move(r));
  }
  Corpus corpus(std::move(records));
  corpus.set_truth(derive_truth(corpus));
  return corpus;
}

}  // namespace pblock
