#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library's algorithms; only its plain data types are shared.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pblock/corpus.hpp"
#include "pblock/shingle.hpp"
#include "pblock/vectorize.hpp"

namespace oracle {

using pblock::FeatureIndex;

inline pblock::ShingleSet make_set(std::vector<FeatureIndex> features, pblock::RecordIndex record = 0) {
  return pblock::ShingleSet::from_features(record, std::move(features));
}

inline double jaccard(const std::vector<FeatureIndex>& a, const std::vector<FeatureIndex>& b) {
  std::set<FeatureIndex> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (auto x : sa) inter += sb.count(x);
  const std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

/// Dense weighted Jaccard: Σ min / Σ max.
inline double weighted_jaccard(const std::vector<double>& x, const std::vector<double>& y) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
    const double a = i < x.size() ? x[i] : 0.0;
    const double b = i < y.size() ? y[i] : 0.0;
    num += std::min(a, b);
    den += std::max(a, b);
  }
  return den == 0 ? 1.0 : num / den;
}

inline pblock::WeightedShingleVector to_sparse(const std::vector<double>& dense, pblock::RecordIndex record = 0) {
  std::vector<std::pair<FeatureIndex, double>> entries;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) entries.emplace_back(static_cast<FeatureIndex>(i), dense[i]);
  }
  return pblock::WeightedShingleVector::from_entries(record, std::move(entries));
}

/// Two sets over a fresh universe with |a ∩ b| = shared, |a \ b| = only_a, |b \ a| = only_b.
/// Elements are spread over a random subset of [0, universe).
inline std::pair<std::vector<FeatureIndex>, std::vector<FeatureIndex>> set_pair(std::size_t shared, std::size_t only_a,
                                                                              std::size_t only_b,
                                                                              std::uint32_t universe,
                                                                              std::mt19937_64& rng) {
  const std::size_t total = shared + only_a + only_b;
  std::set<FeatureIndex> picked;
  std::uniform_int_distribution<std::uint32_t> pick(0, universe - 1);
  while (picked.size() < total) picked.insert(pick(rng));
  std::vector<FeatureIndex> all(picked.begin(), picked.end());
  std::shuffle(all.begin(), all.end(), rng);
  std::vector<FeatureIndex> a(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(shared + only_a));
  std::vector<FeatureIndex> b(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(shared));
  b.insert(b.end(), all.begin() + static_cast<std::ptrdiff_t>(shared + only_a), all.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return {a, b};
}

/// Set pair whose Jaccard is close to `target`, with a union of about `union_size` elements.
inline std::pair<std::vector<FeatureIndex>, std::vector<FeatureIndex>> set_pair_with_jaccard(
    double target, std::size_t union_size, std::mt19937_64& rng) {
  const auto shared = static_cast<std::size_t>(std::llround(target * static_cast<double>(union_size)));
  const std::size_t rest = union_size - shared;
  return set_pair(shared, rest / 2, rest - rest / 2, 1u << 30, rng);
}

/// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < order.size();) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

using Pair = std::pair<std::uint32_t, std::uint32_t>;

struct Counts {
  std::uint64_t cl = 0, fn = 0, fp = 0, cnl = 0;
  double recall = 1, precision = 1, rr = 1;
};

/// Walks every unordered pair of n records once. Labels decide true matches.
inline Counts confusion(const std::vector<std::string>& labels, const std::set<Pair>& candidates) {
  Counts c;
  const std::size_t n = labels.size();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const bool match = labels[i] == labels[j];
      const bool cand = candidates.count({i, j}) > 0;
      if (match && cand) ++c.cl;
      else if (match) ++c.fn;
      else if (cand) ++c.fp;
      else ++c.cnl;
    }
  }
  if (c.cl + c.fn > 0) c.recall = static_cast<double>(c.cl) / static_cast<double>(c.cl + c.fn);
  if (c.cl + c.fp > 0) c.precision = static_cast<double>(c.cl) / static_cast<double>(c.cl + c.fp);
  const double all = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  c.rr = 1.0 - static_cast<double>(c.cl + c.fp) / all;
  return c;
}

/// Corpus with one "name" field per record, ids r0.., and the given labels.
inline pblock::Corpus labelled_corpus(const std::vector<std::string>& names, const std::vector<std::string>& labels) {
  std::vector<pblock::Record> records;
  for (std::size_t i = 0; i < names.size(); ++i) {
    pblock::Record r;
    r.id = "r" + std::to_string(i);
    r.fields = {{"name", names[i]}};
    if (i < labels.size()) r.entity_label = labels[i];
    records.push_back(std::move(r));
  }
  return pblock::Corpus(std::move(records));
}

/// Within-bucket pairs of buckets given as lists of members, via a double loop.
inline std::set<Pair> bucket_pairs(const std::vector<std::vector<std::uint32_t>>& buckets) {
  std::set<Pair> out;
  for (const auto& b : buckets) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[i] < b[j]) out.insert({b[i], b[j]});
      }
    }
  }
  return out;
}

}  // namespace oracle
