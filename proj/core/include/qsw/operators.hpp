#pragma once

#include <optional>
#include <vector>

#include "qsw/graph.hpp"
#include "qsw/sparse.hpp"

namespace qsw {

/// Expanded-space layout of the demoralisation scheme: original vertex i owns
/// the index range [offsets[i], offsets[i+1]) with dims[i] slots.
///
/// dims[i] is the number of incoming arcs of vertex i counted on the
/// symmetrized graph, floored at 1 so isolated vertices still occupy a slot.
struct VertexSubspaces {
  std::vector<std::size_t> offsets;  // length vertex_count() + 1
  std::vector<std::size_t> dims;

  std::size_t vertex_count() const { return dims.size(); }
  std::size_t total_dim() const { return offsets.back(); }
};

enum class WalkKind { Local, Global, NonMoralisingGlobal };

/// Resolution of the two-slot rotating-Hamiltonian ambiguity: in a dim-2
/// subspace the +i and -i cases of the construction name the same entries.
/// `Cancel` sums them to zero (the default); `PauliY` keeps the antisymmetric
/// pair (+i below the diagonal, -i above).
enum class Dim2Rotation { Cancel, PauliY };

/// Operators defining one walk variant, as consumed by the superoperator
/// builders.
struct OperatorSet {
  WalkKind kind = WalkKind::Local;
  double omega = 0.0;
  SparseMatrix hamiltonian;
  /// Local kind: exactly one condensed matrix whose entry (i, j) is the
  /// amplitude of the scattering channel j -> i. Global kinds: the explicit
  /// Lindblad operators.
  std::vector<SparseMatrix> lindblads;
  std::optional<SparseMatrix> rotating_hamiltonian;
  std::optional<VertexSubspaces> subspaces;
};

/// Condensed local-interaction Lindblad matrix: entrywise sqrt(|m_ij|),
/// sparsity pattern preserved (diagonal entries become dephasing channels).
SparseMatrix local_lindblad(const SparseMatrix& m);

/// Global-interaction Lindblad operator: the adjacency matrix itself.
SparseMatrix global_lindblad(const WeightedDigraph& g);

/// Vertex subspaces for the demoralisation scheme, from the symmetrized graph.
VertexSubspaces nm_vsets(const WeightedDigraph& gu);

/// Expanded-space weights: an arc (k -> i) of weight w induces entries of
/// value (dims[i]*dims[k]*w)^(-1/2) on every expanded arc between the two
/// subspaces.
SparseMatrix demoralised_weights(const WeightedDigraph& g, const VertexSubspaces& vsets);

/// Hamiltonian of the demoralised graph: the generator matrix of the
/// expanded-space weights of `gu`.
SparseMatrix nm_H(double gamma, const WeightedDigraph& gu, const VertexSubspaces& vsets);

/// Demoralised-digraph Lindblad operator. Every expanded arc amplitude is the
/// demoralised weight multiplied by an unnormalized Fourier-matrix phase of
/// the destination subspace: for the a-th incoming arc of vertex i (sources
/// enumerated in ascending index order) and destination slot l, the phase is
/// exp(2*pi*1i * l * ((a+1) mod dims[i]) / dims[i]). Scales linearly with
/// gamma like the generator matrix.
SparseMatrix nm_L(double gamma, const WeightedDigraph& g, const VertexSubspaces& vsets);

/// Rotating Hamiltonian preventing spurious stationary states: block-diagonal
/// with +i at (k+1 mod d, k) and -i at (k-1 mod d, k) inside each subspace.
SparseMatrix nm_H_rot(const VertexSubspaces& vsets, Dim2Rotation dim2 = Dim2Rotation::Cancel);

/// Splits each vertex probability uniformly over its subspace slots.
/// Input must be non-negative and normalized within 1e-12.
std::vector<double> nm_rho_map(const std::vector<double>& p, const VertexSubspaces& vsets);

/// Folds expanded-space diagonal probabilities back onto original vertices.
std::vector<double> nm_measure(const std::vector<double>& rho_diag,
                               const VertexSubspaces& vsets);

}  // namespace qsw
