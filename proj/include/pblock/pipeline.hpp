#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pblock/banding.hpp"
#include "pblock/corpus.hpp"
#include "pblock/doph.hpp"
#include "pblock/klsh.hpp"
#include "pblock/metrics.hpp"
#include "pblock/shingle.hpp"

namespace pblock {

enum class Engine { Klsh, Doph, WeightedDoph };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view name);

struct CorpusSource {
  std::optional<std::filesystem::path> path;
  LoadOptions load;
  /// Two-column id pairs file; used when no label column is configured.
  std::optional<std::filesystem::path> truth_pairs;
  /// Generate instead of loading when set (and no path is given).
  std::optional<SynthConfig> synth;
};

/// Grid axes. Empty lists fall back to the single value in the engine config.
struct GridSpec {
  std::vector<std::size_t> shingle_k;
  std::vector<std::size_t> K;
  std::vector<std::size_t> L;
  std::vector<std::size_t> clusters;
  /// Mean block sizes used to derive c = n / size when `clusters` is empty.
  std::vector<std::size_t> block_sizes;

  /// L = 100..1000 step 100, K = {15, 18, 20, 23, 25, 28, 30, 32, 35}.
  static GridSpec doph_default();
  /// shingle k = 1..4 with c chosen for mean block sizes 1000 down to 10.
  static GridSpec klsh_default();
};

struct RunConfig {
  CorpusSource corpus;
  Engine engine = Engine::Doph;
  ShingleConfig shingle;
  KlshConfig klsh;
  DophConfig doph;
  /// Weighted sampling normalizer; unset means the corpus-wide maximum component.
  std::optional<double> normalizer;
  GridSpec grid;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::optional<std::filesystem::path> out_dir;
  bool write_candidates = true;

  /// Pushes the master seed into the engine configs and validates them.
  void finalize();
};

/// Parses the declarative JSON config; unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);
nlohmann::ordered_json to_json(const RunConfig& config);

/// Loads or generates the corpus and attaches ground truth (label column,
/// pairs file, or the generator's labels) when available.
Corpus load_run_corpus(const RunConfig& config);

struct RunResult {
  BlockingReport report;
  PairSet candidates;
  std::optional<BlockAssignment> assignment;     // klsh only
  std::optional<BucketStats> bucket_stats;       // doph engines only
};

/// shingle -> (vectorize) -> engine -> candidates -> metrics.
RunResult run_once(const RunConfig& config, const Corpus& corpus);

/// Loads the corpus, runs once and writes report.json (plus candidates and,
/// for klsh, the block assignment) into config.out_dir when set.
BlockingReport run_once(const RunConfig& config);

using ResultsTable = std::vector<BlockingReport>;

/// One report per grid point, ordered by (shingle k, K, L) or (shingle k, c).
/// A failing point records its error and the sweep continues.
ResultsTable run_grid(const RunConfig& config, const Corpus& corpus);
ResultsTable run_grid(const RunConfig& config);

void write_results_csv(std::ostream& out, const ResultsTable& table);

struct CurvePoint {
  double recall = 0.0;
  double rr = 0.0;
  std::size_t K = 0;
  std::size_t L = 0;
  std::size_t clusters = 0;
  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct CurveFiles {
  std::vector<std::filesystem::path> files;
  std::size_t excluded_rows = 0;  // failed points or points without truth
};

/// Writes curve_shingle<k>.csv (recall, rr, K, L, clusters) per shingle
/// length present in the table.
CurveFiles emit_curves(const ResultsTable& table, const std::filesystem::path& out_dir);
std::vector<CurvePoint> read_curve(const std::filesystem::path& path);

}  // namespace pblock
