#include "pblock/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "pblock/csv.hpp"
#include "pblock/error.hpp"
#include "pblock/hash.hpp"
#include "pblock/parallel.hpp"
#include "pblock/vectorize.hpp"

namespace pblock {

namespace {

constexpr std::string_view kModule = "cli";

[[noreturn]] void config_error(const std::string& what) { throw Error(kModule, ErrorCode::Config, what); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::Klsh: return "klsh";
    case Engine::Doph: return "doph";
    case Engine::WeightedDoph: return "weighted-doph";
  }
  return "unknown";
}

Engine parse_engine(std::string_view name) {
  if (name == "klsh") return Engine::Klsh;
  if (name == "doph") return Engine::Doph;
  if (name == "weighted-doph") return Engine::WeightedDoph;
  config_error("unknown engine '" + std::string(name) + "' (expected klsh, doph or weighted-doph)");
}

GridSpec GridSpec::doph_default() {
  GridSpec g;
  for (std::size_t l = 100; l <= 1000; l += 100) g.L.push_back(l);
  g.K = {15, 18, 20, 23, 25, 28, 30, 32, 35};
  return g;
}

GridSpec GridSpec::klsh_default() {
  GridSpec g;
  g.shingle_k = {1, 2, 3, 4};
  g.block_sizes = {1000, 500, 200, 100, 50, 20, 10};
  return g;
}

void RunConfig::finalize() {
  shingle.validate();
  klsh.seed = seed;
  doph.seed = seed;
  if (engine == Engine::Klsh) {
    klsh.validate();
  } else {
    doph.validate();
  }
  if (normalizer && !(*normalizer > 0.0)) config_error("normalizer must be positive");
  if (corpus.synth) corpus.synth->validate();
}

// --- configuration file -------------------------------------------------------

namespace {

void check_keys(const nlohmann::json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) config_error(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      config_error("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read_opt(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig c;
  check_keys(j, "config",
             {"corpus", "engine", "shingle", "klsh", "doph", "weighted", "grid", "seed", "workers", "out",
              "write_candidates"});
  if (j.contains("corpus")) {
    const auto& cj = j["corpus"];
    check_keys(cj, "corpus", {"path", "schema", "label_column", "id_column", "truth_pairs", "synth"});
    if (cj.contains("path")) c.corpus.path = cj["path"].get<std::string>();
    read_opt(cj, "schema", c.corpus.load.schema);
    if (cj.contains("label_column")) c.corpus.load.label_column = cj["label_column"].get<std::string>();
    if (cj.contains("id_column")) c.corpus.load.id_column = cj["id_column"].get<std::string>();
    if (cj.contains("truth_pairs")) c.corpus.truth_pairs = cj["truth_pairs"].get<std::string>();
    if (cj.contains("synth")) {
      const auto& sj = cj["synth"];
      check_keys(sj, "corpus.synth", {"n_base", "dup_rate", "max_dups", "noise", "seed", "name_model"});
      SynthConfig s;
      read_opt(sj, "n_base", s.n_base);
      read_opt(sj, "dup_rate", s.dup_rate);
      read_opt(sj, "max_dups", s.max_dups);
      read_opt(sj, "noise", s.noise);
      read_opt(sj, "seed", s.seed);
      if (sj.contains("name_model")) s.name_model = parse_name_model(sj["name_model"].get<std::string>());
      c.corpus.synth = s;
    }
  }
  if (j.contains("engine")) c.engine = parse_engine(j["engine"].get<std::string>());
  if (j.contains("shingle")) {
    const auto& sj = j["shingle"];
    check_keys(sj, "shingle", {"k", "per_token", "uppercase", "strip_non_alnum", "error_on_unseen"});
    read_opt(sj, "k", c.shingle.k);
    read_opt(sj, "per_token", c.shingle.per_token);
    read_opt(sj, "uppercase", c.shingle.uppercase);
    read_opt(sj, "strip_non_alnum", c.shingle.strip_non_alnum);
    read_opt(sj, "error_on_unseen", c.shingle.error_on_unseen);
  }
  if (j.contains("klsh")) {
    const auto& kj = j["klsh"];
    check_keys(kj, "klsh", {"projections", "clusters", "max_iters", "tol"});
    read_opt(kj, "projections", c.klsh.projections);
    read_opt(kj, "clusters", c.klsh.clusters);
    read_opt(kj, "max_iters", c.klsh.max_iters);
    read_opt(kj, "tol", c.klsh.tol);
  }
  if (j.contains("doph")) {
    const auto& dj = j["doph"];
    check_keys(dj, "doph", {"K", "L", "range"});
    read_opt(dj, "K", c.doph.K);
    read_opt(dj, "L", c.doph.L);
    read_opt(dj, "range", c.doph.range);
  }
  if (j.contains("weighted")) {
    const auto& wj = j["weighted"];
    check_keys(wj, "weighted", {"normalizer"});
    if (wj.contains("normalizer")) c.normalizer = wj["normalizer"].get<double>();
  }
  if (j.contains("grid")) {
    const auto& gj = j["grid"];
    check_keys(gj, "grid", {"shingle_k", "K", "L", "clusters", "block_sizes"});
    read_opt(gj, "shingle_k", c.grid.shingle_k);
    read_opt(gj, "K", c.grid.K);
    read_opt(gj, "L", c.grid.L);
    read_opt(gj, "clusters", c.grid.clusters);
    read_opt(gj, "block_sizes", c.grid.block_sizes);
  }
  read_opt(j, "seed", c.seed);
  read_opt(j, "workers", c.workers);
  if (j.contains("out")) c.out_dir = j["out"].get<std::string>();
  read_opt(j, "write_candidates", c.write_candidates);
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(kModule, ErrorCode::Io, "cannot open config " + path.string());
  try {
    return parse_run_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    config_error("invalid JSON in " + path.string() + ": " + e.what());
  } catch (const nlohmann::json::type_error& e) {
    config_error("invalid value in " + path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json corpus = nlohmann::ordered_json::object();
  if (c.corpus.path) corpus["path"] = c.corpus.path->string();
  if (!c.corpus.load.schema.empty()) corpus["schema"] = c.corpus.load.schema;
  if (c.corpus.load.label_column) corpus["label_column"] = *c.corpus.load.label_column;
  if (c.corpus.load.id_column) corpus["id_column"] = *c.corpus.load.id_column;
  if (c.corpus.truth_pairs) corpus["truth_pairs"] = c.corpus.truth_pairs->string();
  if (c.corpus.synth) {
    const auto& s = *c.corpus.synth;
    corpus["synth"] = {{"n_base", s.n_base}, {"dup_rate", s.dup_rate}, {"max_dups", s.max_dups},
                       {"noise", s.noise}, {"seed", s.seed}, {"name_model", to_string(s.name_model)}};
  }
  j["corpus"] = corpus;
  j["engine"] = to_string(c.engine);
  j["shingle"] = {{"k", c.shingle.k},
                  {"per_token", c.shingle.per_token},
                  {"uppercase", c.shingle.uppercase},
                  {"strip_non_alnum", c.shingle.strip_non_alnum},
                  {"error_on_unseen", c.shingle.error_on_unseen}};
  j["klsh"] = {{"projections", c.klsh.projections},
               {"clusters", c.klsh.clusters},
               {"max_iters", c.klsh.max_iters},
               {"tol", c.klsh.tol}};
  j["doph"] = {{"K", c.doph.K}, {"L", c.doph.L}, {"range", c.doph.range}};
  if (c.normalizer) j["weighted"] = {{"normalizer", *c.normalizer}};
  j["grid"] = {{"shingle_k", c.grid.shingle_k},
               {"K", c.grid.K},
               {"L", c.grid.L},
               {"clusters", c.grid.clusters},
               {"block_sizes", c.grid.block_sizes}};
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  if (c.out_dir) j["out"] = c.out_dir->string();
  j["write_candidates"] = c.write_candidates;
  return j;
}

Corpus load_run_corpus(const RunConfig& config) {
  if (config.corpus.path) {
    Corpus corpus = load_corpus(*config.corpus.path, config.corpus.load);
    if (!config.corpus.load.label_column && config.corpus.truth_pairs) {
      corpus.set_truth(load_truth_pairs(*config.corpus.truth_pairs, corpus));
    }
    return corpus;
  }
  if (config.corpus.synth) return generate_synthetic(*config.corpus.synth);
  config_error("no corpus path or synthetic corpus configured");
}

// --- engines -----------------------------------------------------------------

namespace {

/// Everything that depends only on the corpus and the shingle config.
struct Prepared {
  ShingleConfig shingle;
  std::vector<ShingleSet> sets;
  std::size_t universe = 0;
  std::vector<WeightedShingleVector> vectors;  // klsh and weighted-doph
  std::optional<WeightedSamplingConfig> sampling;
  std::vector<ShingleSet> samples;  // weighted-doph
  HashCounters sampling_counters;
  double seconds = 0.0;
};

constexpr std::uint64_t kSamplingSeedStream = 7;

Prepared prepare(const RunConfig& config, const Corpus& corpus, std::size_t shingle_k) {
  const auto start = Clock::now();
  Prepared p;
  p.shingle = config.shingle;
  p.shingle.k = shingle_k;
  p.shingle.validate();
  const Vocabulary vocab = build_vocabulary(corpus, p.shingle);
  p.universe = vocab.size();
  p.sets = shingle_corpus(corpus, p.shingle, vocab, config.workers);

  if (config.engine != Engine::Doph) {
    const auto idf = compute_idf(p.sets, p.universe);
    p.vectors = vectorize_all(p.sets, idf, {}, config.workers);
  }
  if (config.engine == Engine::WeightedDoph) {
    const auto sampling_seed = derive_seed(config.seed, kSamplingSeedStream);
    auto sampling = WeightedSamplingConfig::for_vectors(p.vectors, sampling_seed);
    if (config.normalizer) sampling.normalizer = *config.normalizer;
    p.sampling = sampling;
    p.samples.resize(p.vectors.size());
    const std::size_t workers = resolve_workers(config.workers);
    std::vector<HashCounters> per_worker(workers);
    parallel_chunks(p.vectors.size(), workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) p.samples[i] = sample_weighted(p.vectors[i], sampling, &per_worker[w]);
    });
    for (const auto& c : per_worker) p.sampling_counters += c;
  }
  p.seconds = seconds_since(start);
  return p;
}

void put_counters(BlockingReport& report, const HashCounters& c) {
  report.counters["element_hashes"] = c.element_hashes;
  report.counters["sampling_draws"] = c.sampling_draws;
  report.counters["slot_visits"] = c.slot_visits;
}

RunResult run_doph_point(const RunConfig& config, const Corpus& corpus, const Prepared& prep, std::size_t K,
                         std::size_t L) {
  const auto start = Clock::now();
  DophConfig doph = config.doph;
  doph.K = K;
  doph.L = L;
  doph.seed = config.seed;
  doph.validate();

  RunResult result;
  auto& report = result.report;
  report.engine = std::string(to_string(config.engine));
  report.parameters["shingle_k"] = prep.shingle.k;
  report.parameters["per_token"] = prep.shingle.per_token;
  report.parameters["K"] = K;
  report.parameters["L"] = L;
  report.parameters["range"] = doph.effective_range();
  report.parameters["seed"] = config.seed;
  if (prep.sampling) report.parameters["normalizer"] = prep.sampling->normalizer;

  const auto& sets = config.engine == Engine::WeightedDoph ? prep.samples : prep.sets;
  const std::size_t n = corpus.size();
  const std::size_t workers = resolve_workers(config.workers);
  BandKeys keys(n, L);
  std::vector<HashCounters> per_worker(workers);
  std::vector<std::uint64_t> skipped_per_worker(workers, 0);
  parallel_chunks(n, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (sets[i].empty()) {
        ++skipped_per_worker[w];
        continue;
      }
      const auto sig = oph_signature(std::span<const FeatureIndex>(sets[i].features), doph, &per_worker[w]);
      keys.set(i, sig, K);
    }
  });
  HashCounters counters = prep.sampling_counters;
  for (const auto& c : per_worker) counters += c;
  for (auto s : skipped_per_worker) report.skipped_records += s;
  if (report.skipped_records > 0) {
    warn(std::to_string(report.skipped_records) + " record(s) produced an empty " +
         (config.engine == Engine::WeightedDoph ? "weighted sample" : "shingle set") + " and were not hashed");
  }
  const double hash_seconds = seconds_since(start);

  const auto band_start = Clock::now();
  BucketStats stats;
  result.candidates = collect_candidates(keys, workers, &stats);
  report.counters["max_bucket"] = stats.max_bucket;
  put_counters(report, counters);
  result.bucket_stats = std::move(stats);
  report.timings["prepare"] = prep.seconds;
  report.timings["hash"] = hash_seconds;
  report.timings["banding"] = seconds_since(band_start);
  score(report, result.candidates, corpus.truth(), n);
  report.timings["total"] = prep.seconds + seconds_since(start);
  return result;
}

struct KlshPrepared {
  PointSet points;
  double seconds = 0.0;
};

KlshPrepared project_points(const RunConfig& config, const Prepared& prep) {
  const auto start = Clock::now();
  const ProjectionMatrix proj(config.klsh.projections, prep.universe, config.seed);
  KlshPrepared out{project_all(prep.vectors, proj, config.workers), 0.0};
  out.seconds = seconds_since(start);
  return out;
}

RunResult run_klsh_point(const RunConfig& config, const Corpus& corpus, const Prepared& prep,
                         const KlshPrepared& kp, std::size_t clusters) {
  const auto start = Clock::now();
  KlshConfig klsh = config.klsh;
  klsh.clusters = clusters;
  klsh.seed = config.seed;

  RunResult result;
  auto& report = result.report;
  report.engine = std::string(to_string(config.engine));
  report.parameters["shingle_k"] = prep.shingle.k;
  report.parameters["per_token"] = prep.shingle.per_token;
  report.parameters["projections"] = klsh.projections;
  report.parameters["clusters"] = clusters;
  report.parameters["max_iters"] = klsh.max_iters;
  report.parameters["tol"] = klsh.tol;
  report.parameters["seed"] = config.seed;

  auto assignment = kmeans_block(kp.points, klsh, config.workers);
  const double kmeans_seconds = seconds_since(start);
  result.candidates = klsh_candidates(assignment);
  report.counters["kmeans_iterations"] = assignment.iterations;
  report.counters["kmeans_converged"] = assignment.converged ? 1 : 0;
  report.counters["non_empty_blocks"] = assignment.non_empty_blocks();
  result.assignment = std::move(assignment);
  report.timings["prepare"] = prep.seconds + kp.seconds;
  report.timings["kmeans"] = kmeans_seconds;
  score(report, result.candidates, corpus.truth(), corpus.size());
  report.timings["total"] = prep.seconds + kp.seconds + seconds_since(start);
  return result;
}

BlockingReport failed_point(const RunConfig& config, std::size_t shingle_k, nlohmann::ordered_json params,
                            const std::exception& e) {
  BlockingReport r;
  r.engine = std::string(to_string(config.engine));
  r.parameters = std::move(params);
  r.parameters["shingle_k"] = shingle_k;
  r.error = e.what();
  return r;
}

std::vector<std::size_t> resolve_clusters(const GridSpec& grid, std::size_t n) {
  if (!grid.clusters.empty()) return grid.clusters;
  const auto sizes = grid.block_sizes.empty() ? GridSpec::klsh_default().block_sizes : grid.block_sizes;
  std::vector<std::size_t> out;
  for (auto size : sizes) {
    if (size == 0) config_error("block size must be positive");
    const auto c = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::llround(static_cast<double>(n) / static_cast<double>(size))), 1, n);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RunResult run_once(const RunConfig& input, const Corpus& corpus) {
  RunConfig config = input;
  config.finalize();
  const auto prep = prepare(config, corpus, config.shingle.k);
  if (config.engine == Engine::Klsh) {
    const auto kp = project_points(config, prep);
    return run_klsh_point(config, corpus, prep, kp, config.klsh.clusters);
  }
  return run_doph_point(config, corpus, prep, config.doph.K, config.doph.L);
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(kModule, ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

}  // namespace

BlockingReport run_once(const RunConfig& input) {
  RunConfig config = input;
  config.finalize();
  const Corpus corpus = load_run_corpus(config);
  auto result = run_once(config, corpus);
  if (config.out_dir) {
    std::filesystem::create_directories(*config.out_dir);
    write_text(*config.out_dir / "report.json", to_json(result.report).dump(2) + "\n");
    if (config.write_candidates) {
      std::ofstream out(*config.out_dir / "candidates.csv", std::ios::binary);
      write_pairs(out, result.candidates, corpus);
    }
    if (result.assignment) {
      std::ofstream out(*config.out_dir / "assignment.csv", std::ios::binary);
      write_assignment(out, *result.assignment, corpus);
    }
  }
  return result.report;
}

ResultsTable run_grid(const RunConfig& input, const Corpus& corpus) {
  RunConfig config = input;
  config.finalize();
  ResultsTable table;

  if (config.engine == Engine::Klsh) {
    const auto shingles = config.grid.shingle_k.empty() ? GridSpec::klsh_default().shingle_k : config.grid.shingle_k;
    const auto clusters = resolve_clusters(config.grid, corpus.size());
    for (auto sk : shingles) {
      std::optional<Prepared> prep;
      std::optional<KlshPrepared> kp;
      try {
        prep = prepare(config, corpus, sk);
        kp = project_points(config, *prep);
      } catch (const Error& e) {
        for (auto c : clusters) table.push_back(failed_point(config, sk, {{"clusters", c}}, e));
        continue;
      }
      for (auto c : clusters) {
        try {
          table.push_back(run_klsh_point(config, corpus, *prep, *kp, c).report);
        } catch (const Error& e) {
          table.push_back(failed_point(config, sk, {{"clusters", c}}, e));
        }
      }
    }
    return table;
  }

  const auto defaults = GridSpec::doph_default();
  const auto shingles = config.grid.shingle_k.empty() ? std::vector<std::size_t>{config.shingle.k} : config.grid.shingle_k;
  const auto Ks = config.grid.K.empty() ? defaults.K : config.grid.K;
  const auto Ls = config.grid.L.empty() ? defaults.L : config.grid.L;
  for (auto sk : shingles) {
    std::optional<Prepared> prep;
    try {
      prep = prepare(config, corpus, sk);
    } catch (const Error& e) {
      for (auto K : Ks) {
        for (auto L : Ls) table.push_back(failed_point(config, sk, {{"K", K}, {"L", L}}, e));
      }
      continue;
    }
    for (auto K : Ks) {
      for (auto L : Ls) {
        try {
          table.push_back(run_doph_point(config, corpus, *prep, K, L).report);
        } catch (const Error& e) {
          table.push_back(failed_point(config, sk, {{"K", K}, {"L", L}}, e));
        }
      }
    }
  }
  return table;
}

ResultsTable run_grid(const RunConfig& input) {
  RunConfig config = input;
  config.finalize();
  const Corpus corpus = load_run_corpus(config);
  auto table = run_grid(config, corpus);
  if (config.out_dir) {
    std::filesystem::create_directories(*config.out_dir);
    std::ofstream out(*config.out_dir / "results.csv", std::ios::binary);
    write_results_csv(out, table);
    emit_curves(table, *config.out_dir / "curves");
  }
  return table;
}

// --- tables and curves --------------------------------------------------------

namespace {

std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::size_t param(const BlockingReport& r, const char* key) {
  if (!r.parameters.contains(key)) return 0;
  const auto& v = r.parameters[key];
  return v.is_number_unsigned() || v.is_number_integer() ? v.get<std::size_t>() : 0;
}

}  // namespace

void write_results_csv(std::ostream& out, const ResultsTable& table) {
  csv::write_row(out, {"engine", "shingle_k", "K", "L", "clusters", "projections", "records", "candidate_pairs",
                       "CL", "FN", "FP", "CNL", "recall", "precision", "rr", "skipped_records",
                       "element_hashes", "seconds", "error"});
  for (const auto& r : table) {
    auto count = [&](auto member) { return r.counts ? std::to_string((*r.counts).*member) : std::string(); };
    auto counter = [&](const char* key) {
      auto it = r.counters.find(key);
      return it == r.counters.end() ? std::string() : std::to_string(it->second);
    };
    const bool scored = r.ok() && r.counts;
    auto timing = r.timings.find("total");
    csv::write_row(out, {r.engine, std::to_string(param(r, "shingle_k")), std::to_string(param(r, "K")),
                         std::to_string(param(r, "L")), std::to_string(param(r, "clusters")),
                         std::to_string(param(r, "projections")), std::to_string(r.records),
                         r.ok() ? std::to_string(r.candidate_pairs) : "", count(&ConfusionCounts::cl),
                         count(&ConfusionCounts::fn), count(&ConfusionCounts::fp), count(&ConfusionCounts::cnl),
                         scored ? format_double(r.recall) : "", scored ? format_double(r.precision) : "",
                         r.ok() ? format_double(r.rr) : "", std::to_string(r.skipped_records),
                         counter("element_hashes"),
                         timing == r.timings.end() ? "" : format_double(timing->second), r.error});
  }
}

CurveFiles emit_curves(const ResultsTable& table, const std::filesystem::path& out_dir) {
  std::map<std::size_t, std::vector<CurvePoint>> curves;
  CurveFiles files;
  for (const auto& r : table) {
    if (!r.ok() || !r.counts) {
      ++files.excluded_rows;
      continue;
    }
    curves[param(r, "shingle_k")].push_back(
        {r.recall, r.rr, param(r, "K"), param(r, "L"), param(r, "clusters")});
  }
  if (files.excluded_rows > 0) {
    warn("emit_curves: excluded " + std::to_string(files.excluded_rows) + " row(s) without metrics");
  }
  std::filesystem::create_directories(out_dir);
  for (const auto& [k, points] : curves) {
    const auto path = out_dir / ("curve_shingle" + std::to_string(k) + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(kModule, ErrorCode::Io, "cannot write " + path.string());
    out << "recall,rr,K,L,clusters\n";
    for (const auto& p : points) {
      out << format_double(p.recall) << ',' << format_double(p.rr) << ',' << p.K << ',' << p.L << ','
          << p.clusters << '\n';
    }
    files.files.push_back(path);
  }
  return files;
}

std::vector<CurvePoint> read_curve(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(kModule, ErrorCode::Io, "cannot open " + path.string());
  auto rows = csv::read_all(in);
  std::vector<CurvePoint> points;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 5) throw Error(kModule, ErrorCode::Io, "malformed curve row in " + path.string());
    points.push_back({std::stod(row[0]), std::stod(row[1]), std::stoul(row[2]), std::stoul(row[3]),
                      std::stoul(row[4])});
  }
  return points;
}

}  // namespace pblock
