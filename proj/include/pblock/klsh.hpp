#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pblock/corpus.hpp"
#include "pblock/pairs.hpp"
#include "pblock/vectorize.hpp"

namespace pblock {

struct KlshConfig {
  std::size_t projections = 20;  // p
  std::size_t clusters = 10;     // c
  std::size_t max_iters = 50;
  double tol = 1e-6;  // stop once no centroid moves further than this
  std::uint64_t seed = 1;

  void validate() const;
};

/// p x D matrix of independent standard Gaussian entries. Entry (j, f) is a
/// pure function of (seed, j, f), so the matrix does not depend on how or in
/// which order it is generated.
class ProjectionMatrix {
 public:
  ProjectionMatrix(std::size_t projections, std::size_t universe, std::uint64_t seed);

  std::size_t rows() const { return rows_; }
  std::size_t universe() const { return universe_; }
  double at(std::size_t row, FeatureIndex feature) const { return data_[feature * rows_ + row]; }
  /// Column f, i.e. the image of the unit vector e_f.
  std::span<const double> column(FeatureIndex feature) const {
    return std::span<const double>(data_).subspan(feature * rows_, rows_);
  }

 private:
  std::size_t rows_;
  std::size_t universe_;
  std::vector<double> data_;  // column-major
};

/// Dense n x p point matrix, row-major.
struct PointSet {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> row(std::size_t i) const { return std::span<const double>(coords).subspan(i * dim, dim); }
  std::span<double> row(std::size_t i) { return std::span<double>(coords).subspan(i * dim, dim); }
};

/// Sparse matrix-vector product: component j = Σ_f weight(f) * proj(j, f).
std::vector<double> project(const WeightedShingleVector& vector, const ProjectionMatrix& proj);
PointSet project_all(std::span<const WeightedShingleVector> vectors, const ProjectionMatrix& proj,
                     std::size_t workers = 1);

struct BlockAssignment {
  std::vector<std::uint32_t> block;  // block id per record index, in [0, clusters)
  std::size_t clusters = 0;
  /// k-means objective (sum of squared distances) after every assignment step.
  std::vector<double> objective;
  std::size_t iterations = 0;
  bool converged = false;

  std::size_t non_empty_blocks() const;
  std::vector<std::size_t> block_sizes() const;
};

/// Lloyd's algorithm with deterministic k-means++ seeding. Empty clusters are
/// re-seeded with the points farthest from their centroids; assignment ties go
/// to the lowest centroid index. With c == n every record gets its own block.
/// Throws a config error when c > n.
BlockAssignment kmeans_block(const PointSet& points, const KlshConfig& config, std::size_t workers = 1);

/// All unordered pairs within each block.
PairSet klsh_candidates(const BlockAssignment& assignment);

/// "record_id,block_id" rows with a header.
void write_assignment(std::ostream& out, const BlockAssignment& assignment, const Corpus& corpus);

}  // namespace pblock
