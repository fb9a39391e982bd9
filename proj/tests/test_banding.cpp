#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pblock/banding.hpp"
#include "pblock/doph.hpp"
#include "pblock/error.hpp"

using namespace pblock;

namespace {

DophConfig doph(std::size_t K, std::size_t L) {
  DophConfig c;
  c.K = K;
  c.L = L;
  return c;
}

/// Signatures whose values come from a tiny alphabet, so buckets collide often.
std::vector<HashSignature> random_signatures(std::size_t n, std::size_t k, std::uint64_t alphabet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HashSignature> out(n, HashSignature(k));
  for (auto& s : out)
    for (auto& v : s) v = rng() % alphabet;
  return out;
}

/// Buckets of table j formed by grouping records on their raw K-value tuples.
std::vector<std::vector<std::uint32_t>> oracle_buckets(const std::vector<HashSignature>& sigs, std::size_t K,
                                                       std::size_t j) {
  std::map<std::vector<std::uint64_t>, std::vector<std::uint32_t>> groups;
  for (std::uint32_t r = 0; r < sigs.size(); ++r) {
    groups[std::vector<std::uint64_t>(sigs[r].begin() + static_cast<std::ptrdiff_t>(j * K),
                                      sigs[r].begin() + static_cast<std::ptrdiff_t>((j + 1) * K))]
        .push_back(r);
  }
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& [key, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

std::set<oracle::Pair> as_set(const PairSet& ps) {
  std::set<oracle::Pair> out;
  for (auto p : ps.pairs()) out.insert({p.first, p.second});
  return out;
}

}  // namespace

TEST_CASE("identical records share a bucket in every table") {
  std::vector<HashSignature> sigs = random_signatures(3, 12, 1000, 1);
  sigs[2] = sigs[0];
  auto tables = build_tables(sigs, doph(3, 4));
  REQUIRE(tables.size() == 4);
  for (const auto& t : tables) {
    bool together = false;
    for (std::size_t b = 0; b < t.bucket_count(); ++b) {
      auto m = t.bucket(b);
      together |= std::find(m.begin(), m.end(), 0u) != m.end() && std::find(m.begin(), m.end(), 2u) != m.end();
    }
    CHECK(together);
  }
}

TEST_CASE("K = 1 keys each table by one slot") {
  auto sigs = random_signatures(50, 8, 3, 2);
  auto tables = build_tables(sigs, doph(1, 8));
  for (std::size_t j = 0; j < 8; ++j) {
    for (std::size_t b = 0; b < tables[j].bucket_count(); ++b) {
      auto m = tables[j].bucket(b);
      for (auto r : m) CHECK(sigs[r][j] == sigs[m[0]][j]);
    }
  }
}

TEST_CASE("buckets equal a tuple-grouping oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto sigs = random_signatures(200, 2 * 6, 3, seed);
    auto tables = build_tables(sigs, doph(2, 6));
    for (std::size_t j = 0; j < 6; ++j) {
      std::vector<std::vector<std::uint32_t>> got;
      std::size_t members = 0;
      for (std::size_t b = 0; b < tables[j].bucket_count(); ++b) {
        auto m = tables[j].bucket(b);
        got.emplace_back(m.begin(), m.end());
        members += m.size();
      }
      std::sort(got.begin(), got.end());
      CHECK(members == sigs.size());
      CHECK(got == oracle_buckets(sigs, 2, j));
    }
  }
}

TEST_CASE("signature length mismatch is a banding error") {
  std::vector<HashSignature> sigs = {HashSignature(6), HashSignature(5)};
  try {
    build_tables(sigs, doph(2, 3));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Banding);
  }
}

TEST_CASE("singleton buckets give no candidates") {
  std::vector<HashSignature> sigs;
  for (std::uint64_t r = 0; r < 20; ++r) sigs.push_back(HashSignature(4, r));
  auto tables = build_tables(sigs, doph(2, 2));
  CHECK(candidates(tables).empty());
  auto stats = max_bucket_stats(tables);
  CHECK(stats.max_bucket == 1);
  CHECK(stats.mean_bucket == 1.0);
}

TEST_CASE("union and dedup across tables") {
  BandTable t1, t2;
  t1.keys = {7};
  t1.offsets = {0, 3};
  t1.members = {1, 2, 3};
  t2.index = 1;
  t2.keys = {1, 2};
  t2.offsets = {0, 2, 3};
  t2.members = {2, 3, 4};
  std::vector<BandTable> tables = {t1, t2};
  CHECK(as_set(candidates(tables)) == std::set<oracle::Pair>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("identical corpus forms one bucket") {
  std::vector<HashSignature> sigs(30, HashSignature(6, 42));
  auto tables = build_tables(sigs, doph(3, 2));
  auto stats = max_bucket_stats(tables);
  CHECK(stats.max_bucket == 30);
  CHECK(stats.max_per_table == std::vector<std::size_t>{30, 30});
  CHECK(candidates(tables).size() == pair_count(30));
}

TEST_CASE("candidates equal a double-loop oracle over buckets") {
  auto sigs = random_signatures(100, 3 * 5, 2, 9);
  auto tables = build_tables(sigs, doph(3, 5));
  std::vector<std::vector<std::uint32_t>> all;
  for (std::size_t j = 0; j < 5; ++j) {
    auto b = oracle_buckets(sigs, 3, j);
    all.insert(all.end(), b.begin(), b.end());
  }
  CHECK(as_set(candidates(tables)) == oracle::bucket_pairs(all));
}

TEST_CASE("streaming collection equals table-by-table candidates") {
  auto sigs = random_signatures(300, 2 * 20, 4, 4);
  auto cfg = doph(2, 20);
  auto tables = build_tables(sigs, cfg);
  BandKeys keys(sigs.size(), cfg.L);
  for (std::size_t r = 0; r < sigs.size(); ++r) keys.set(r, sigs[r], cfg.K);
  BucketStats s1, s3;
  auto one = collect_candidates(keys, 1, &s1);
  auto three = collect_candidates(keys, 3, &s3);
  CHECK(one == candidates(tables));
  CHECK(three == one);
  CHECK(s1.max_per_table == max_bucket_stats(tables).max_per_table);
  CHECK(s3.max_per_table == s1.max_per_table);
  CHECK(s3.mean_bucket == doctest::Approx(s1.mean_bucket));
}

TEST_CASE("absent records are never bucketed") {
  BandKeys keys(3, 2);
  keys.set(0, HashSignature{1, 1}, 1);
  keys.set(2, HashSignature{1, 1}, 1);
  CHECK_FALSE(keys.present(1));
  auto c = collect_candidates(keys);
  CHECK(c.size() == 1);
  CHECK(c.contains(0, 2));
}

TEST_CASE("more bands give a superset of candidates") {
  auto sigs = random_signatures(150, 2 * 12, 3, 6);
  PairSet previous;
  for (std::size_t L = 1; L <= 12; ++L) {
    std::vector<HashSignature> prefix;
    for (const auto& s : sigs) prefix.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(2 * L));
    auto c = candidates(build_tables(prefix, doph(2, L)));
    CHECK(previous.is_subset_of(c));
    previous = c;
  }
}

TEST_CASE("candidates do not depend on record order") {
  auto sigs = random_signatures(120, 8, 3, 12);
  std::vector<std::uint32_t> perm(sigs.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(1));
  std::vector<HashSignature> shuffled(sigs.size());
  for (std::size_t i = 0; i < sigs.size(); ++i) shuffled[i] = sigs[perm[i]];
  auto base = candidates(build_tables(sigs, doph(2, 4)));
  auto moved = candidates(build_tables(shuffled, doph(2, 4)));
  std::vector<RecordPair> mapped;
  for (auto p : moved.pairs()) mapped.push_back(RecordPair::canonical(perm[p.first], perm[p.second]));
  CHECK(PairSet::from_pairs(mapped) == base);
}

TEST_CASE("max bucket size shrinks as K grows") {
  SynthConfig sc;
  sc.n_base = 500;
  auto corpus = generate_synthetic(sc);
  std::vector<std::vector<FeatureIndex>> sets;
  // Records as sets of character codes: dense overlap, so small K buckets are large.
  for (const auto& r : corpus.records()) {
    std::vector<FeatureIndex> f;
    for (unsigned char ch : r.text()) f.push_back(ch);
    sets.push_back(f);
  }
  std::vector<double> Ks, maxima;
  for (std::size_t K : {1, 2, 4, 8, 16}) {
    std::vector<HashSignature> sigs;
    for (const auto& s : sets) sigs.push_back(oph_signature(std::span<const FeatureIndex>(s), doph(K, 10)));
    Ks.push_back(static_cast<double>(K));
    maxima.push_back(static_cast<double>(max_bucket_stats(build_tables(sigs, doph(K, 10))).max_bucket));
  }
  CHECK(std::is_sorted(maxima.rbegin(), maxima.rend()));
  CHECK(maxima.front() > maxima.back());
}
