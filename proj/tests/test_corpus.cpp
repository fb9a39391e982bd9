#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "pblock/corpus.hpp"
#include "pblock/error.hpp"

using namespace pblock;

namespace {

Corpus load(const std::string& text, LoadOptions options = {}) {
  std::istringstream in(text);
  return load_corpus(in, options);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("two-row file yields two records") {
  auto c = load("id,name\n1,Ann\n2,Bob\n");
  CHECK(c.size() == 2);
  CHECK(c[0].id == "1");
  CHECK(c[1].text() == "Bob");
  CHECK_FALSE(c.truth().has_value());
}

TEST_CASE("label column yields same-label pairs") {
  LoadOptions opt;
  opt.label_column = "entity";
  auto c = load("id,name,entity\na,Ann,e1\nb,Anne,e1\nc,Bob,e2\n", opt);
  REQUIRE(c.truth().has_value());
  CHECK(c.truth()->match_count() == 1);
  CHECK(c.truth()->match_pairs.contains(0, 1));
  CHECK(c.truth()->non_match_count() == 2);
  CHECK(c[0].fields.size() == 1);
}

TEST_CASE("missing declared column is a schema error") {
  LoadOptions opt;
  opt.schema = {"name"};
  CHECK(code_of([&] { load("id,given\n1,Ann\n", opt); }) == ErrorCode::Schema);
  opt.schema = {};
  opt.label_column = "entity";
  CHECK(code_of([&] { load("id,name\n1,Ann\n", opt); }) == ErrorCode::Schema);
}

TEST_CASE("ingestion errors") {
  CHECK(code_of([] { load(""); }) == ErrorCode::Ingestion);
  CHECK(code_of([] { load("id,name\n"); }) == ErrorCode::Ingestion);
  CHECK(code_of([] { load("id,name\n1,Ann,extra\n"); }) == ErrorCode::Ingestion);
  CHECK(code_of([] { load("id,name\n1,Ann\n1,Bob\n"); }) == ErrorCode::Ingestion);
  CHECK(code_of([] { load("id,name\n1,\n"); }) == ErrorCode::Ingestion);
}

TEST_CASE("missing values are empty strings") {
  auto c = load("id,first,last\n1,,Smith\n2,Ann,\n");
  CHECK(c[0].fields[0].value.empty());
  CHECK(c[0].text() == "Smith");
  CHECK(c[1].text() == "Ann");
}

TEST_CASE("ids default to row ordinals without an id column") {
  auto c = load("name\nAnn\nBob\n");
  CHECK(c[0].id == "1");
  CHECK(c[1].id == "2");
  CHECK(c.index_of("2") == RecordIndex{1});
}

TEST_CASE("quoted fields and UTF-8 survive") {
  auto c = load("\xEF\xBB\xBFid,name\n1,\"Baker, Ted\"\n2,\"say \"\"hi\"\"\"\n3,\xD8\xB3\xD8\xA7\xD9\x85\n");
  CHECK(c[0].text() == "Baker, Ted");
  CHECK(c[1].text() == "say \"hi\"");
  CHECK(c[2].text() == "\xD8\xB3\xD8\xA7\xD9\x85");
}

TEST_CASE("derive_truth counts") {
  auto pairs = [](std::vector<std::string> labels) {
    std::vector<std::string> names(labels.size(), "x");
    return derive_truth(oracle::labelled_corpus(names, labels)).match_count();
  };
  CHECK(pairs({"a", "a", "a"}) == 3);
  CHECK(pairs({"a", "b", "c"}) == 0);
  CHECK(pairs({"a", "a", "b", "b", "b"}) == 4);

  auto unlabelled = oracle::labelled_corpus({"x", "y"}, {"a"});
  CHECK(code_of([&] { derive_truth(unlabelled); }) == ErrorCode::Truth);
}

TEST_CASE("match pairs equal the sum of per-entity pair counts") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 200;
    const std::size_t entities = 1 + rng() % n;
    std::vector<std::string> labels, names;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back("e" + std::to_string(rng() % entities));
      names.push_back("n" + std::to_string(i));
    }
    std::map<std::string, std::uint64_t> mult;
    for (const auto& l : labels) ++mult[l];
    std::uint64_t expected = 0;
    for (auto& [l, m] : mult) expected += m * (m - 1) / 2;
    auto truth = derive_truth(oracle::labelled_corpus(names, labels));
    CHECK(truth.match_count() == expected);
    for (auto p : truth.match_pairs.pairs()) CHECK(labels[p.first] == labels[p.second]);
  }
}

TEST_CASE("truth pairs file with and without header") {
  auto c = load("id,name\na,Ann\nb,Anne\nc,Bob\n");
  std::istringstream with_header("id_a,id_b\nb,a\n");
  auto t1 = load_truth_pairs(with_header, c);
  CHECK(t1.match_count() == 1);
  CHECK(t1.match_pairs.contains(0, 1));
  std::istringstream bare("a,c\nc,b\n");
  CHECK(load_truth_pairs(bare, c).match_count() == 2);
  std::istringstream unknown("a,zz\n");
  CHECK_THROWS_AS(load_truth_pairs(unknown, c), Error);
}

TEST_CASE("pairs round-trip through write_pairs/read_pairs") {
  auto c = load("id,name\nb,Ann\na,Anne\nc,Bob\n");
  auto ps = PairSet::from_pairs(std::vector<RecordPair>{{0, 1}, {1, 2}});
  std::ostringstream out;
  write_pairs(out, ps, c);
  CHECK(out.str() == "id_a,id_b\na,b\na,c\n");
  std::istringstream in(out.str());
  CHECK(read_pairs(in, c) == ps);
  std::istringstream bad("id_a,id_b\na,q\n");
  CHECK(code_of([&] { read_pairs(bad, c); }) == ErrorCode::Metric);
}

TEST_CASE("write_corpus round-trips") {
  SynthConfig cfg;
  cfg.n_base = 30;
  auto c = generate_synthetic(cfg);
  std::ostringstream out;
  write_corpus(out, c);
  LoadOptions opt;
  opt.label_column = "entity";
  auto back = load(out.str(), opt);
  CHECK(back == c);
  CHECK(back.truth()->match_pairs == c.truth()->match_pairs);
}

TEST_CASE("zero-noise synthetic duplicates are byte-identical") {
  SynthConfig cfg;
  cfg.noise = 0;
  cfg.dup_rate = 1;
  cfg.max_dups = 1;
  cfg.n_base = 5;
  auto c = generate_synthetic(cfg);
  CHECK(c.size() == 10);
  REQUIRE(c.truth().has_value());
  CHECK(c.truth()->match_count() == 5);
  for (auto p : c.truth()->match_pairs.pairs()) CHECK(c[p.first].fields == c[p.second].fields);
}

TEST_CASE("synthetic generation is a pure function of its config") {
  for (auto model : {NameModel::Letters, NameModel::Syllables}) {
    SynthConfig cfg;
    cfg.n_base = 200;
    cfg.seed = 9;
    cfg.name_model = model;
    auto a = generate_synthetic(cfg);
    auto b = generate_synthetic(cfg);
    CHECK(a == b);
    CHECK(a.truth()->match_pairs == b.truth()->match_pairs);
    cfg.seed = 10;
    CHECK_FALSE(generate_synthetic(cfg) == a);
  }
}

TEST_CASE("duplicated entity count is exact") {
  SynthConfig cfg;
  cfg.n_base = 1000;
  cfg.dup_rate = 0.1;
  cfg.max_dups = 3;
  auto c = generate_synthetic(cfg);
  std::map<std::string, int> mult;
  for (const auto& r : c.records()) ++mult[*r.entity_label];
  int duplicated = 0;
  for (auto& [l, m] : mult) {
    duplicated += m >= 2;
    CHECK(m <= 4);
  }
  CHECK(mult.size() == 1000);
  CHECK(duplicated == 100);
  CHECK(derive_truth(c).match_pairs == c.truth()->match_pairs);
}

TEST_CASE("synthetic config validation") {
  SynthConfig cfg;
  cfg.dup_rate = 1.5;
  CHECK(code_of([&] { generate_synthetic(cfg); }) == ErrorCode::Config);
  cfg = {};
  cfg.noise = -0.1;
  CHECK(code_of([&] { generate_synthetic(cfg); }) == ErrorCode::Config);
  cfg = {};
  cfg.n_base = 0;
  CHECK(code_of([&] { generate_synthetic(cfg); }) == ErrorCode::Config);
  CHECK(parse_name_model("syllables") == NameModel::Syllables);
  CHECK_THROWS_AS(parse_name_model("klingon"), Error);
}

TEST_CASE("corpus rejects truth that does not fit") {
  auto c = oracle::labelled_corpus({"a", "b"}, {});
  GroundTruth t;
  t.n_records = 3;
  CHECK(code_of([&] { c.set_truth(t); }) == ErrorCode::Truth);
}
