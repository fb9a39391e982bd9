#include "pblock/shingle.hpp"

#include <algorithm>

#include "pblock/error.hpp"
#include "pblock/parallel.hpp"

namespace pblock {

namespace {

constexpr std::string_view kModule = "shingle";

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool keep_char(unsigned char c, const ShingleConfig& config) {
  if (!config.strip_non_alnum || c >= 0x80) return true;
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string clean(std::string_view token, const ShingleConfig& config) {
  std::string out;
  out.reserve(token.size());
  for (char ch : token) {
    auto c = static_cast<unsigned char>(ch);
    if (!keep_char(c, config)) continue;
    if (config.uppercase && c >= 'a' && c <= 'z') c = static_cast<unsigned char>(c - 'a' + 'A');
    out.push_back(static_cast<char>(c));
  }
  return out;
}

/// Byte offsets where each UTF-8 code point starts, plus a final end offset.
std::vector<std::size_t> code_point_offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto c = static_cast<unsigned char>(s[i]);
    if ((c & 0xC0) != 0x80 || offsets.empty()) offsets.push_back(i);
  }
  offsets.push_back(s.size());
  return offsets;
}

template <typename Sink>
void for_each_shingle(std::string_view text, const ShingleConfig& config, Sink&& sink) {
  for (const auto& token : canonicalize(text, config)) {
    const auto offsets = code_point_offsets(token);
    const std::size_t length = offsets.size() - 1;
    if (length < config.k) {
      sink(std::string_view(token));
      continue;
    }
    for (std::size_t i = 0; i + config.k <= length; ++i) {
      sink(std::string_view(token).substr(offsets[i], offsets[i + config.k] - offsets[i]));
    }
  }
}

ShingleSet collect(RecordIndex index, std::vector<FeatureIndex>& raw) {
  std::sort(raw.begin(), raw.end());
  ShingleSet set;
  set.record = index;
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i;
    while (j < raw.size() && raw[j] == raw[i]) ++j;
    set.features.push_back(raw[i]);
    set.counts.push_back(static_cast<std::uint32_t>(j - i));
    i = j;
  }
  return set;
}

}  // namespace

void ShingleConfig::validate() const {
  if (k < 1) throw Error(kModule, ErrorCode::Config, "shingle length k must be at least 1");
}

std::vector<std::string> canonicalize(std::string_view text, const ShingleConfig& config) {
  std::vector<std::string> tokens;
  if (!config.per_token) {
    auto whole = clean(text, config);
    if (!whole.empty()) tokens.push_back(std::move(whole));
    return tokens;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_space(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) {
      auto token = clean(text.substr(i, j - i), config);
      if (!token.empty()) tokens.push_back(std::move(token));
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> shingle_strings(std::string_view text, const ShingleConfig& config) {
  config.validate();
  std::vector<std::string> out;
  for_each_shingle(text, config, [&](std::string_view s) { out.emplace_back(s); });
  return out;
}

std::optional<FeatureIndex> Vocabulary::find(std::string_view shingle) const {
  auto it = index_.find(shingle);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FeatureIndex Vocabulary::intern(std::string_view shingle) {
  if (auto it = index_.find(shingle); it != index_.end()) return it->second;
  const auto id = static_cast<FeatureIndex>(shingles_.size());
  shingles_.emplace_back(shingle);
  index_.emplace(shingles_.back(), id);
  return id;
}

ShingleSet ShingleSet::from_features(RecordIndex record, std::vector<FeatureIndex> features) {
  return collect(record, features);
}

ShingleSet shingle_record(const Record& record, RecordIndex index, const ShingleConfig& config,
                          const Vocabulary& vocab) {
  config.validate();
  std::vector<FeatureIndex> raw;
  for_each_shingle(record.text(), config, [&](std::string_view s) {
    if (auto f = vocab.find(s)) {
      raw.push_back(*f);
    } else if (config.error_on_unseen) {
      throw Error(kModule, ErrorCode::Vocabulary,
                  "record '" + record.id + "': shingle '" + std::string(s) + "' not in vocabulary");
    }
  });
  return collect(index, raw);
}

ShingleSet shingle_record_extending(const Record& record, RecordIndex index, const ShingleConfig& config,
                                    Vocabulary& vocab) {
  config.validate();
  std::vector<FeatureIndex> raw;
  for_each_shingle(record.text(), config, [&](std::string_view s) { raw.push_back(vocab.intern(s)); });
  return collect(index, raw);
}

Vocabulary build_vocabulary(const Corpus& corpus, const ShingleConfig& config) {
  config.validate();
  if (corpus.empty()) throw Error(kModule, ErrorCode::Vocabulary, "empty corpus");
  Vocabulary vocab;
  for (const auto& r : corpus.records()) {
    for_each_shingle(r.text(), config, [&](std::string_view s) { vocab.intern(s); });
  }
  if (vocab.size() == 0) throw Error(kModule, ErrorCode::Vocabulary, "corpus yields no shingles");
  return vocab;
}

std::vector<ShingleSet> shingle_corpus(const Corpus& corpus, const ShingleConfig& config,
                                       const Vocabulary& vocab, std::size_t workers) {
  std::vector<ShingleSet> out(corpus.size());
  parallel_for(corpus.size(), workers, [&](std::size_t i) {
    out[i] = shingle_record(corpus[i], static_cast<RecordIndex>(i), config, vocab);
  });
  return out;
}

}  // namespace pblock
