#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pblock/error.hpp"
#include "pblock/vectorize.hpp"

using namespace pblock;

namespace {

ShingleSet with_counts(std::vector<FeatureIndex> f, std::vector<std::uint32_t> c) {
  ShingleSet s;
  s.features = std::move(f);
  s.counts = std::move(c);
  return s;
}

IdfTable table(std::vector<double> idf) {
  IdfTable t;
  t.documents = 1;
  t.df.assign(idf.size(), 1);
  t.idf = std::move(idf);
  return t;
}

}  // namespace

TEST_CASE("idf values") {
  std::vector<ShingleSet> docs = {oracle::make_set({0, 1}), oracle::make_set({0}), oracle::make_set({0}),
                                  oracle::make_set({0})};
  auto idf = compute_idf(docs, 3);
  CHECK(idf.documents == 4);
  CHECK(idf.idf[0] == 0.0);
  CHECK(idf.idf[1] == doctest::Approx(1.3863).epsilon(1e-4));
  CHECK(idf.idf[1] == std::log(4.0));
  CHECK(idf.df[2] == 0);
  CHECK(idf.idf[2] == 0.0);

  std::vector<ShingleSet> two = {oracle::make_set({0, 1}), oracle::make_set({0})};
  auto t = compute_idf(two, 2);
  CHECK(t.idf[1] > t.idf[0]);
}

TEST_CASE("zero idf annihilates") {
  auto v = vectorize(with_counts({1}, {2}), table({0.0, 0.0}));
  CHECK(v.empty());
}

TEST_CASE("weights are count times idf") {
  auto v = vectorize(with_counts({1, 2}, {1, 3}), table({0.0, 1.0, 0.5}));
  CHECK(v.features == std::vector<FeatureIndex>{1, 2});
  CHECK(v.weights == std::vector<double>{1.0, 1.5});
  CHECK(v.max_weight() == 1.5);
}

TEST_CASE("identical shingle sets give identical vectors") {
  auto idf = table({0.3, 1.0, 0.5});
  auto s = with_counts({0, 2}, {4, 1});
  auto a = vectorize(s, idf), b = vectorize(s, idf);
  CHECK(a.features == b.features);
  CHECK(a.weights == b.weights);
}

TEST_CASE("vectors are non-negative and linear in counts") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t D = 1 + rng() % 30;
    std::vector<double> idf(D);
    for (auto& x : idf) x = static_cast<double>(rng() % 100) / 10.0;
    std::vector<FeatureIndex> f;
    std::vector<std::uint32_t> c, c2;
    for (FeatureIndex i = 0; i < D; ++i) {
      if (rng() % 2) {
        f.push_back(i);
        c.push_back(1 + static_cast<std::uint32_t>(rng() % 5));
        c2.push_back(c.back() * 3);
      }
    }
    auto v = vectorize(with_counts(f, c), table(idf));
    auto v3 = vectorize(with_counts(f, c2), table(idf));
    REQUIRE(v.features == v3.features);
    for (std::size_t i = 0; i < v.size(); ++i) {
      CHECK(v.weights[i] > 0.0);
      CHECK(v3.weights[i] == doctest::Approx(3.0 * v.weights[i]));
    }
  }
}

TEST_CASE("normalization is opt-in") {
  VectorizeOptions opt;
  opt.normalize = true;
  auto v = vectorize(with_counts({0, 1}, {3, 4}), table({1.0, 1.0}), opt);
  CHECK(v.weights[0] == doctest::Approx(0.6));
  CHECK(v.weights[1] == doctest::Approx(0.8));
}

TEST_CASE("from_entries sums, sorts and drops zeros") {
  auto v = WeightedShingleVector::from_entries(0, {{3, 1.0}, {1, 2.0}, {3, 0.5}, {2, 0.0}});
  CHECK(v.features == std::vector<FeatureIndex>{1, 3});
  CHECK(v.weights == std::vector<double>{2.0, 1.5});
  CHECK_THROWS_AS(WeightedShingleVector::from_entries(0, {{0, -1.0}}), Error);
}

TEST_CASE("vectorize_all is worker-count independent") {
  std::vector<ShingleSet> docs;
  std::mt19937_64 rng(8);
  for (RecordIndex r = 0; r < 200; ++r) {
    std::vector<FeatureIndex> f;
    for (int i = 0; i < 10; ++i) f.push_back(static_cast<FeatureIndex>(rng() % 50));
    docs.push_back(oracle::make_set(f, r));
  }
  auto idf = compute_idf(docs, 50);
  auto a = vectorize_all(docs, idf, {}, 1);
  auto b = vectorize_all(docs, idf, {}, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].features == b[i].features);
    CHECK(a[i].weights == b[i].weights);
    CHECK(a[i].record == i);
  }
}
