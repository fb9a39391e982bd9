#include "pblock/minhash.hpp"

#include <algorithm>
#include <limits>

#include "pblock/error.hpp"
#include "pblock/hash.hpp"

namespace pblock {

std::uint64_t HashFamily::key(std::size_t i) const { return derive_seed(seed_, i); }

std::uint64_t HashFamily::apply(std::uint64_t key, FeatureIndex element) { return mix64(key ^ element); }

std::uint64_t HashFamily::operator()(std::size_t i, FeatureIndex element) const { return apply(key(i), element); }

double jaccard(const ShingleSet& a, const ShingleSet& b) {
  if (a.empty() && b.empty()) {
    warn("jaccard of two empty sets defined as 1");
    return 1.0;
  }
  std::size_t inter = 0;
  auto i = a.features.begin();
  auto j = b.features.begin();
  while (i != a.features.end() && j != b.features.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Visits the union of supports as (x_i, y_i) with zeros filled in.
template <typename Fn>
void merge_supports(const WeightedShingleVector& x, const WeightedShingleVector& y, Fn&& fn) {
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x.features[i] < y.features[j])) {
      fn(x.weights[i++], 0.0);
    } else if (i == x.size() || y.features[j] < x.features[i]) {
      fn(0.0, y.weights[j++]);
    } else {
      fn(x.weights[i++], y.weights[j++]);
    }
  }
}

}  // namespace

double weighted_jaccard(const WeightedShingleVector& x, const WeightedShingleVector& y) {
  double num = 0.0, den = 0.0;
  merge_supports(x, y, [&](double a, double b) {
    num += std::min(a, b);
    den += std::max(a, b);
  });
  if (den == 0.0) {
    warn("weighted jaccard of two zero vectors defined as 1");
    return 1.0;
  }
  return num / den;
}

double weighted_jaccard_l1(const WeightedShingleVector& x, const WeightedShingleVector& y) {
  double l1 = 0.0, den = 0.0;
  merge_supports(x, y, [&](double a, double b) {
    l1 += std::abs(a - b);
    den += std::max(a, b);
  });
  if (den == 0.0) return 1.0;
  return 1.0 - l1 / den;
}

HashSignature naive_minhash(const ShingleSet& s, const HashFamily& family, std::size_t count,
                            HashCounters* counters) {
  if (s.empty()) throw Error("minhash", ErrorCode::Signature, "empty set has no minhash");
  HashSignature sig(count, std::numeric_limits<std::uint64_t>::max());
  for (std::size_t i = 0; i < count; ++i) {
    const auto key = family.key(i);
    auto best = std::numeric_limits<std::uint64_t>::max();
    for (auto e : s.features) best = std::min(best, HashFamily::apply(key, e));
    sig[i] = best;
  }
  if (counters) {
    counters->element_hashes += static_cast<std::uint64_t>(s.size()) * count;
    counters->slot_visits += count;
  }
  return sig;
}

double collision_rate(const HashSignature& a, const HashSignature& b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error("minhash", ErrorCode::Signature, "signatures must be non-empty and of equal length");
  }
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

}  // namespace pblock
