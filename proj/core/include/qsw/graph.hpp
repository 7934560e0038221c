#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qsw/sparse.hpp"

namespace qsw {

/// Raised when an input file does not follow its declared format.
class FileFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Absorption channel: a fresh vertex feeding `target` at the given rate.
struct SourceArc {
  std::size_t target = 0;
  double rate = 0.0;
};

/// Emission channel: a fresh vertex drained from `origin` at the given rate.
struct SinkArc {
  std::size_t origin = 0;
  double rate = 0.0;
};

/// Per-vertex degree values (weight sums per unit time).
using DegreeVector = std::vector<double>;

/// A validated weighted digraph held as a canonical CSR adjacency matrix.
///
/// Index convention: column j stores the out-arcs of vertex j, so an arc
/// from vertex j to vertex i is the entry at (row i, column j). Out-degrees
/// are column sums and in-degrees are row sums. All interfaces in this
/// library follow this convention.
///
/// Invariants enforced at construction: the matrix is square, all stored
/// weights are real and strictly positive, and the diagonal is empty
/// (simple graph).
class WeightedDigraph {
 public:
  /// Validates and wraps an adjacency matrix (base graph, no augmentation).
  static WeightedDigraph from_adjacency(SparseMatrix adjacency);

  /// Parses Matrix Market `coordinate real/integer general/symmetric` data.
  /// Symmetric storage is expanded to full storage. Duplicate coordinates,
  /// diagonal entries and non-positive weights are rejected.
  static WeightedDigraph load_matrix_market(std::istream& in);

  /// Writes `%%MatrixMarket matrix coordinate real general` with 1-based
  /// indices, entries sorted by (column, row).
  void save_matrix_market(std::ostream& out) const;

  const SparseMatrix& adjacency() const { return adjacency_; }
  /// Total vertex count including any source/sink augmentation.
  std::size_t vertex_count() const { return adjacency_.rows(); }
  std::size_t base_vertex_count() const { return n_base_; }
  const std::vector<SourceArc>& sources() const { return sources_; }
  const std::vector<SinkArc>& sinks() const { return sinks_; }

 private:
  WeightedDigraph() = default;

  SparseMatrix adjacency_;
  std::size_t n_base_ = 0;
  std::vector<SourceArc> sources_;
  std::vector<SinkArc> sinks_;

  friend WeightedDigraph augment(const WeightedDigraph&, const std::vector<SourceArc>&,
                                 const std::vector<SinkArc>&);
};

/// Undirected counterpart: w(i,j) and w(j,i) both become max of the two.
WeightedDigraph symmetrize(const WeightedDigraph& g);

/// Column sums: total weight leaving each vertex.
DegreeVector out_degrees(const WeightedDigraph& g);
/// Row sums: total weight entering each vertex.
DegreeVector in_degrees(const WeightedDigraph& g);

/// CTRW transition matrix M: M_ij = -gamma*G_ij off the diagonal and
/// M_jj = gamma*OutDeg(j), so every column sums to zero.
SparseMatrix generator_matrix(double gamma, const WeightedDigraph& g);
SparseMatrix generator_matrix(double gamma, const SparseMatrix& adjacency);

/// Markov chain transition matrix: C_ij = 1/OutDeg(j) where an arc exists.
SparseMatrix markov_chain_matrix(const WeightedDigraph& g);

/// Appends one vertex per source/sink arc. Sources come first (in argument
/// order), then sinks; the base block is unchanged. Each source vertex has a
/// single arc of weight `rate` into its target; each sink vertex has a single
/// arc of weight `rate` out of its origin.
WeightedDigraph augment(const WeightedDigraph& g, const std::vector<SourceArc>& sources,
                        const std::vector<SinkArc>& sinks);

}  // namespace qsw
