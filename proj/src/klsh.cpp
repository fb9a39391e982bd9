#include "pblock/klsh.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <ostream>

#include "pblock/csv.hpp"
#include "pblock/error.hpp"
#include "pblock/hash.hpp"
#include "pblock/parallel.hpp"

namespace pblock {

namespace {

constexpr std::string_view kModule = "klsh";
constexpr std::uint64_t kProjectionStream = 1;
constexpr std::uint64_t kKmeansStream = 2;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    d += t * t;
  }
  return d;
}

struct Nearest {
  std::uint32_t index;
  double distance;
};

Nearest nearest(std::span<const double> point, const PointSet& centroids) {
  Nearest best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(point, centroids.row(c));
    if (d < best.distance) best = {static_cast<std::uint32_t>(c), d};
  }
  return best;
}

PointSet kmeans_plus_plus(const PointSet& points, std::size_t clusters, Rng& rng) {
  const std::size_t n = points.size();
  PointSet centroids{points.dim, {}};
  centroids.coords.reserve(clusters * points.dim);
  std::vector<char> chosen(n, 0);
  auto choose = [&](std::size_t i) {
    chosen[i] = 1;
    auto r = points.row(i);
    centroids.coords.insert(centroids.coords.end(), r.begin(), r.end());
  };

  std::size_t first = rng.below(n);
  choose(first);
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(points.row(i), points.row(first));

  while (centroids.size() < clusters) {
    double total = 0.0;
    for (double d : d2) total += d;
    std::size_t pick = n;
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc > target && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      if (pick == n) {  // rounding at the tail
        for (std::size_t i = n; i-- > 0;) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // Every point coincides with a centroid; take the first unused one.
      pick = static_cast<std::size_t>(std::find(chosen.begin(), chosen.end(), 0) - chosen.begin());
    }
    choose(pick);
    const auto c = centroids.row(centroids.size() - 1);
    for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points.row(i), c));
  }
  return centroids;
}

}  // namespace

void KlshConfig::validate() const {
  if (projections < 1) throw Error(kModule, ErrorCode::Config, "number of projections p must be at least 1");
  if (clusters < 1) throw Error(kModule, ErrorCode::Config, "number of clusters c must be at least 1");
  if (!(tol > 0.0)) throw Error(kModule, ErrorCode::Config, "tol must be positive");
}

ProjectionMatrix::ProjectionMatrix(std::size_t projections, std::size_t universe, std::uint64_t seed)
    : rows_(projections), universe_(universe), data_(projections * universe) {
  const auto key = derive_seed(seed, kProjectionStream);
  for (std::size_t f = 0; f < universe; ++f) {
    for (std::size_t j = 0; j < projections; ++j) {
      const auto cell = hash_combine(key, f * projections + j);
      data_[f * projections + j] = gaussian_from(mix64(cell ^ 0x1), mix64(cell ^ 0x2));
    }
  }
}

std::vector<double> project(const WeightedShingleVector& vector, const ProjectionMatrix& proj) {
  std::vector<double> out(proj.rows(), 0.0);
  for (std::size_t i = 0; i < vector.size(); ++i) {
    const auto f = vector.features[i];
    if (f >= proj.universe()) throw Error(kModule, ErrorCode::Config, "feature index outside projection universe");
    const auto col = proj.column(f);
    const double w = vector.weights[i];
    for (std::size_t j = 0; j < col.size(); ++j) out[j] += w * col[j];
  }
  return out;
}

PointSet project_all(std::span<const WeightedShingleVector> vectors, const ProjectionMatrix& proj,
                     std::size_t workers) {
  PointSet points{proj.rows(), std::vector<double>(vectors.size() * proj.rows())};
  parallel_for(vectors.size(), workers, [&](std::size_t i) {
    auto p = project(vectors[i], proj);
    std::copy(p.begin(), p.end(), points.row(i).begin());
  });
  return points;
}

std::size_t BlockAssignment::non_empty_blocks() const {
  auto sizes = block_sizes();
  return static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [](auto s) { return s > 0; }));
}

std::vector<std::size_t> BlockAssignment::block_sizes() const {
  std::vector<std::size_t> sizes(clusters, 0);
  for (auto b : block) ++sizes[b];
  return sizes;
}

BlockAssignment kmeans_block(const PointSet& points, const KlshConfig& config, std::size_t workers) {
  config.validate();
  const std::size_t n = points.size();
  if (n == 0) throw Error(kModule, ErrorCode::Config, "no points to cluster");
  if (config.clusters > n) {
    throw Error(kModule, ErrorCode::Config,
                "c = " + std::to_string(config.clusters) + " exceeds n = " + std::to_string(n));
  }

  BlockAssignment result;
  result.clusters = config.clusters;
  result.block.assign(n, 0);

  if (config.clusters == n) {
    std::iota(result.block.begin(), result.block.end(), 0u);
    result.objective.push_back(0.0);
    result.converged = true;
    return result;
  }

  Rng rng(derive_seed(config.seed, kKmeansStream));
  PointSet centroids = kmeans_plus_plus(points, config.clusters, rng);
  std::vector<double> dist(n);

  auto assign = [&] {
    parallel_for(n, workers, [&](std::size_t i) {
      const auto best = nearest(points.row(i), centroids);
      result.block[i] = best.index;
      dist[i] = best.distance;
    });
    double objective = 0.0;
    for (double d : dist) objective += d;
    result.objective.push_back(objective);
  };

  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    assign();
    ++result.iterations;

    PointSet next{points.dim, std::vector<double>(centroids.coords.size(), 0.0)};
    std::vector<std::size_t> counts(config.clusters, 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto dst = next.row(result.block[i]);
      const auto src = points.row(i);
      for (std::size_t j = 0; j < points.dim; ++j) dst[j] += src[j];
      ++counts[result.block[i]];
    }

    // Empty clusters take the farthest points, each point used once.
    std::vector<std::size_t> by_distance;
    std::size_t next_far = 0;
    for (std::size_t c = 0; c < config.clusters; ++c) {
      auto dst = next.row(c);
      if (counts[c] > 0) {
        for (double& v : dst) v /= static_cast<double>(counts[c]);
        continue;
      }
      if (by_distance.empty()) {
        by_distance.resize(n);
        std::iota(by_distance.begin(), by_distance.end(), std::size_t{0});
        std::stable_sort(by_distance.begin(), by_distance.end(),
                         [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
      }
      const auto src = points.row(by_distance[next_far++ % n]);
      std::copy(src.begin(), src.end(), dst.begin());
    }

    double movement = 0.0;
    for (std::size_t c = 0; c < config.clusters; ++c) {
      movement = std::max(movement, squared_distance(next.row(c), centroids.row(c)));
    }
    centroids = std::move(next);
    if (movement < config.tol * config.tol) {
      result.converged = true;
      break;
    }
  }
  // Final assignment against the final centroids.
  assign();
  return result;
}

PairSet klsh_candidates(const BlockAssignment& assignment) {
  std::vector<std::vector<RecordIndex>> blocks(assignment.clusters);
  for (std::size_t i = 0; i < assignment.block.size(); ++i) {
    blocks[assignment.block[i]].push_back(static_cast<RecordIndex>(i));
  }
  PairAccumulator acc;
  for (const auto& b : blocks) acc.add_clique(b);
  return std::move(acc).finish();
}

void write_assignment(std::ostream& out, const BlockAssignment& assignment, const Corpus& corpus) {
  out << "record_id,block_id\n";
  for (std::size_t i = 0; i < assignment.block.size(); ++i) {
    out << csv::escape(corpus[i].id) << ',' << assignment.block[i] << '\n';
  }
}

}  // namespace pblock
