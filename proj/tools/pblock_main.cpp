// pblock: probabilistic blocking for entity resolution.
//
//   pblock synth --n-base 1000 --dup-rate 0.1 --noise 0.05 --out corpus.csv
//   pblock block --corpus corpus.csv --label-column entity --engine doph --K 15 --L 100 --out run/
//   pblock grid  --corpus corpus.csv --label-column entity --engine doph --shingle-k 3 --out grid/
//   pblock eval  --corpus corpus.csv --label-column entity --candidates run/candidates.csv
//
// Exit codes: 0 success, 1 configuration error, 2 data error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pblock/error.hpp"
#include "pblock/pipeline.hpp"

namespace {

using namespace pblock;

struct CorpusFlags {
  std::string config_path;
  std::string corpus;
  std::vector<std::string> schema;
  std::string label_column;
  std::string id_column;
  std::string truth;
};

struct EngineFlags {
  std::string engine;
  std::vector<std::size_t> shingle_k;
  std::vector<std::size_t> K;
  std::vector<std::size_t> L;
  std::vector<std::size_t> clusters;
  std::size_t projections = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  double normalizer = 0.0;
  bool whole_string = false;
  std::string out;
};

void add_corpus_flags(CLI::App* cmd, CorpusFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration; flags override it");
  cmd->add_option("--corpus", f.corpus, "Corpus CSV with a header row");
  cmd->add_option("--schema", f.schema, "Text columns to ingest (default: all but id/label)")->delimiter(',');
  cmd->add_option("--label-column", f.label_column, "Column holding the true entity label");
  cmd->add_option("--id-column", f.id_column, "Column holding record ids (default: 'id' or row number)");
  cmd->add_option("--truth", f.truth, "Two-column id_a,id_b file of true match pairs");
}

void add_engine_flags(CLI::App* cmd, EngineFlags& f, bool lists) {
  cmd->add_option("--engine", f.engine, "klsh, doph or weighted-doph")
      ->check(CLI::IsMember({"klsh", "doph", "weighted-doph"}));
  auto* sk = cmd->add_option("--shingle-k", f.shingle_k, "Shingle length");
  auto* K = cmd->add_option("--K", f.K, "Hashes per band");
  auto* L = cmd->add_option("--L", f.L, "Number of bands (hash tables)");
  auto* c = cmd->add_option("--clusters", f.clusters, "Number of KLSH blocks c");
  for (auto* opt : {sk, K, L, c}) {
    if (lists) {
      opt->delimiter(',');
    } else {
      opt->expected(1);
    }
  }
  cmd->add_option("--projections", f.projections, "Number of random projections p");
  cmd->add_option("--seed", f.seed, "Master random seed");
  cmd->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
  cmd->add_option("--normalizer", f.normalizer, "Weighted sampling normalizer (default: corpus maximum)");
  cmd->add_flag("--whole-string", f.whole_string, "Shingle the whole record text instead of each token");
  cmd->add_option("--out", f.out, "Output directory");
}

RunConfig build_config(CLI::App* cmd, const CorpusFlags& cf, const EngineFlags& ef) {
  RunConfig config = cf.config_path.empty() ? RunConfig{} : load_run_config(cf.config_path);
  if (!cf.corpus.empty()) {
    config.corpus.path = cf.corpus;
    config.corpus.synth.reset();
  }
  if (cmd->count("--schema")) config.corpus.load.schema = cf.schema;
  if (!cf.label_column.empty()) config.corpus.load.label_column = cf.label_column;
  if (!cf.id_column.empty()) config.corpus.load.id_column = cf.id_column;
  if (!cf.truth.empty()) config.corpus.truth_pairs = cf.truth;

  if (!ef.engine.empty()) config.engine = parse_engine(ef.engine);
  if (cmd->count("--shingle-k")) {
    config.shingle.k = ef.shingle_k.front();
    config.grid.shingle_k = ef.shingle_k;
  }
  if (cmd->count("--K")) {
    config.doph.K = ef.K.front();
    config.grid.K = ef.K;
  }
  if (cmd->count("--L")) {
    config.doph.L = ef.L.front();
    config.grid.L = ef.L;
  }
  if (cmd->count("--clusters")) {
    config.klsh.clusters = ef.clusters.front();
    config.grid.clusters = ef.clusters;
  }
  if (cmd->count("--projections")) config.klsh.projections = ef.projections;
  if (cmd->count("--seed")) config.seed = ef.seed;
  if (cmd->count("--workers")) config.workers = ef.workers;
  if (cmd->count("--normalizer")) config.normalizer = ef.normalizer;
  if (ef.whole_string) config.shingle.per_token = false;
  if (!ef.out.empty()) config.out_dir = ef.out;
  config.finalize();
  return config;
}

void print_summary(const BlockingReport& r) {
  std::cout << r.engine << ": " << r.candidate_pairs << " candidate pairs, RR " << r.rr;
  if (r.counts) std::cout << ", recall " << r.recall << ", precision " << r.precision;
  std::cout << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Probabilistic blocking for entity resolution"};
  app.require_subcommand(1);

  CorpusFlags block_corpus, grid_corpus, eval_corpus;
  EngineFlags block_engine, grid_engine;

  auto* block = app.add_subcommand("block", "Run one blocking configuration and score it");
  add_corpus_flags(block, block_corpus);
  add_engine_flags(block, block_engine, false);
  std::string dump_shingles, dump_signatures;
  block->add_option("--dump-shingles", dump_shingles, "Write each record's shingles to this file");
  block->add_option("--dump-signatures", dump_signatures,
                    "Write DOPH signatures (.bin for binary, otherwise CSV)");

  auto* grid = app.add_subcommand("grid", "Sweep (K, L) or (shingle k, c) and write results and curves");
  add_corpus_flags(grid, grid_corpus);
  add_engine_flags(grid, grid_engine, true);

  auto* synth = app.add_subcommand("synth", "Generate a labelled synthetic corpus");
  SynthConfig sc;
  std::string synth_out;
  synth->add_option("--n-base", sc.n_base, "Distinct entities");
  synth->add_option("--dup-rate", sc.dup_rate, "Fraction of entities that get duplicates");
  synth->add_option("--max-dups", sc.max_dups, "Maximum duplicates per duplicated entity");
  synth->add_option("--noise", sc.noise, "Per-character corruption probability");
  synth->add_option("--seed", sc.seed, "Random seed");
  std::string name_model = "letters";
  synth->add_option("--name-model", name_model, "letters or syllables")
      ->check(CLI::IsMember({"letters", "syllables"}));
  synth->add_option("--out", synth_out, "Output CSV (default: stdout)");

  auto* eval = app.add_subcommand("eval", "Score externally produced candidate pairs");
  add_corpus_flags(eval, eval_corpus);
  std::string candidates_path, eval_out;
  eval->add_option("--candidates", candidates_path, "Two-column id_a,id_b candidate pairs file")->required();
  eval->add_option("--out", eval_out, "Write the report JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*synth) {
    sc.name_model = parse_name_model(name_model);
    const auto corpus = generate_synthetic(sc);
    if (synth_out.empty()) {
      write_corpus(std::cout, corpus);
    } else {
      std::ofstream out(synth_out, std::ios::binary);
      if (!out) throw Error("cli", ErrorCode::Io, "cannot write " + synth_out);
      write_corpus(out, corpus);
    }
    return 0;
  }

  if (*block) {
    const auto config = build_config(block, block_corpus, block_engine);
    if (!dump_shingles.empty() || !dump_signatures.empty()) {
      const auto corpus = load_run_corpus(config);
      const auto vocab = build_vocabulary(corpus, config.shingle);
      const auto sets = shingle_corpus(corpus, config.shingle, vocab, config.workers);
      if (!dump_shingles.empty()) {
        std::ofstream out(dump_shingles, std::ios::binary);
        for (const auto& s : sets) {
          out << corpus[s.record].id << '\t';
          for (std::size_t i = 0; i < s.size(); ++i) {
            out << (i ? " " : "") << vocab.shingle(s.features[i]);
            if (s.counts[i] > 1) out << 'x' << s.counts[i];
          }
          out << '\n';
        }
      }
      if (!dump_signatures.empty()) {
        std::vector<std::string> ids;
        std::vector<HashSignature> sigs;
        for (const auto& s : sets) {
          if (s.empty()) continue;
          ids.push_back(corpus[s.record].id);
          sigs.push_back(oph_signature(s, config.doph));
        }
        std::ofstream out(dump_signatures, std::ios::binary);
        if (dump_signatures.ends_with(".bin")) {
          write_signatures_binary(out, ids, sigs);
        } else {
          write_signatures_csv(out, ids, sigs);
        }
      }
    }
    print_summary(run_once(config));
    return 0;
  }

  if (*grid) {
    const auto config = build_config(grid, grid_corpus, grid_engine);
    const auto table = run_grid(config);
    if (!config.out_dir) write_results_csv(std::cout, table);
    std::size_t failed = 0;
    for (const auto& r : table) failed += r.ok() ? 0 : 1;
    std::cerr << table.size() << " grid points, " << failed << " failed\n";
    return 0;
  }

  if (*eval) {
    RunConfig config = eval_corpus.config_path.empty() ? RunConfig{} : load_run_config(eval_corpus.config_path);
    if (!eval_corpus.corpus.empty()) config.corpus.path = eval_corpus.corpus;
    if (eval->count("--schema")) config.corpus.load.schema = eval_corpus.schema;
    if (!eval_corpus.label_column.empty()) config.corpus.load.label_column = eval_corpus.label_column;
    if (!eval_corpus.id_column.empty()) config.corpus.load.id_column = eval_corpus.id_column;
    if (!eval_corpus.truth.empty()) config.corpus.truth_pairs = eval_corpus.truth;
    const auto corpus = load_run_corpus(config);
    if (!corpus.truth()) throw Error("cli", ErrorCode::Config, "eval needs --label-column or --truth");
    std::ifstream in(candidates_path, std::ios::binary);
    if (!in) throw Error("cli", ErrorCode::Io, "cannot open " + candidates_path);
    const auto pairs = read_pairs(in, corpus);
    BlockingReport report;
    report.engine = "external";
    report.parameters["candidates"] = candidates_path;
    score(report, pairs, corpus.truth(), corpus.size());
    const auto text = to_json(report, false).dump(2) + "\n";
    if (eval_out.empty()) {
      std::cout << text;
    } else {
      std::ofstream(eval_out, std::ios::binary) << text;
    }
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pblock::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
