#include "pblock/pairs.hpp"

#include <algorithm>
#include <iterator>

namespace pblock {

PairSet PairSet::from_pairs(std::span<const RecordPair> pairs) {
  std::vector<std::uint64_t> keys;
  keys.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.first == p.second) continue;
    keys.push_back(RecordPair::canonical(p.first, p.second).key());
  }
  return from_keys(std::move(keys));
}

PairSet PairSet::from_keys(std::vector<std::uint64_t> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  PairSet out;
  out.keys_ = std::move(keys);
  return out;
}

bool PairSet::contains(RecordPair p) const {
  return std::binary_search(keys_.begin(), keys_.end(), RecordPair::canonical(p.first, p.second).key());
}

std::int64_t PairSet::max_index() const {
  std::int64_t best = -1;
  for (auto k : keys_) best = std::max<std::int64_t>(best, RecordPair::from_key(k).second);
  return best;
}

std::vector<RecordPair> PairSet::pairs() const {
  std::vector<RecordPair> out;
  out.reserve(keys_.size());
  for (auto k : keys_) out.push_back(RecordPair::from_key(k));
  return out;
}

std::size_t PairSet::intersection_size(const PairSet& other) const {
  std::size_t count = 0;
  auto a = keys_.begin();
  auto b = other.keys_.begin();
  while (a != keys_.end() && b != other.keys_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

bool PairSet::is_subset_of(const PairSet& other) const {
  return std::includes(other.keys_.begin(), other.keys_.end(), keys_.begin(), keys_.end());
}

PairSet unite(const PairSet& a, const PairSet& b) {
  std::vector<std::uint64_t> keys;
  keys.reserve(a.size() + b.size());
  std::set_union(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(), std::back_inserter(keys));
  return PairSet::from_keys(std::move(keys));
}

void PairAccumulator::add_clique(std::span<const RecordIndex> members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) add(members[i], members[j]);
  }
}

void PairAccumulator::compact() {
  std::sort(raw_.begin() + static_cast<std::ptrdiff_t>(unique_prefix_), raw_.end());
  std::inplace_merge(raw_.begin(), raw_.begin() + static_cast<std::ptrdiff_t>(unique_prefix_), raw_.end());
  raw_.erase(std::unique(raw_.begin(), raw_.end()), raw_.end());
  unique_prefix_ = raw_.size();
  compact_at_ = std::max<std::size_t>(compact_at_, 2 * unique_prefix_);
}

PairSet PairAccumulator::finish() && {
  compact();
  return PairSet::from_keys(std::move(raw_));
}

}  // namespace pblock
