#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qsw/expm.hpp"
#include "qsw/liouvillian.hpp"
#include "qsw/operators.hpp"

namespace qsw {

/// Dense density matrix, row-major.
struct DensityMatrix {
  std::size_t dim = 0;
  std::vector<Complex> entries;

  Complex at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  Complex trace() const;
  /// max_ij |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  /// Real parts of the diagonal.
  std::vector<double> populations() const;
  /// Largest |rho_ij| with i != j.
  double max_coherence() const;
};

/// One walk: operators, the assembled superoperator, and the evolution state.
///
/// `initial_state` fixes rho(0). `step(t)` and `series(t1, tq, steps)` always
/// evolve from rho(0) — not from the previous result — and store the
/// final-time state, which `gather_result` / `gather_populations` read back.
/// Re-tuning omega with `set_omega` rebuilds the superoperator and its norm
/// series but leaves the states untouched.
class WalkSystem {
 public:
  /// Local-interaction walk. h and m_l must be padded to the augmented
  /// vertex count; sources/sinks follow the augment() vertex ordering.
  static WalkSystem lqsw(double omega, SparseMatrix h, SparseMatrix m_l,
                         std::vector<SourceArc> sources = {}, std::vector<SinkArc> sinks = {},
                         std::size_t n_workers = 1);

  /// Global-interaction walk; pass both h_rot and vsets for the
  /// non-moralising variant, neither for the plain one.
  static WalkSystem gqsw(double omega, SparseMatrix h, std::vector<SparseMatrix> lindblads,
                         std::optional<SparseMatrix> h_rot = std::nullopt,
                         std::optional<VertexSubspaces> vsets = std::nullopt,
                         std::size_t n_workers = 1);

  WalkKind kind() const { return ops_.kind; }
  double omega() const { return ops_.omega; }
  /// Operator dimension: the augmented vertex count (expanded for NM walks).
  std::size_t dimension() const { return dim_; }
  /// Number of vertices a measurement reports (folds NM subspaces).
  std::size_t measured_vertex_count() const;
  std::size_t worker_count() const { return n_workers_; }
  const DistributedLiouvillian& liouvillian() const { return liouvillian_; }
  const OperatorSet& operators() const { return ops_; }
  const std::optional<VertexSubspaces>& subspaces() const { return ops_.subspaces; }

  /// Diagonal rho(0) from vertex probabilities (off-diagonals zero). Accepts
  /// the operator dimension, the base vertex count of an augmented system
  /// (padded with zeros), or the original vertex count of an NM system
  /// (routed through nm_rho_map).
  void initial_state(const std::vector<double>& probabilities);
  /// Full rho(0); must be Hermitian with unit trace (1e-12).
  void initial_state(const DensityMatrix& rho);
  bool has_state() const { return initial_.has_value(); }

  void set_omega(double omega);

  /// Evolves rho(0) to time t and stores the result.
  void step(double t, const TaylorParameters& params = build_theta_table());
  /// Evolves rho(0) over [t1, tq]; the stored state ends at tq.
  SeriesResult series(double t1, double tq, std::size_t steps,
                      const TaylorParameters& params = build_theta_table());

  /// Most recent state (rho(0) before any evolution), reshaped to a matrix.
  DensityMatrix gather_result() const;
  /// Vertex populations of the most recent state; NM walks are folded back
  /// onto the original vertices.
  std::vector<double> gather_populations() const;
  /// Populations of an arbitrary state of this system (e.g. a series entry).
  std::vector<double> populations_of(const StateVector& state) const;

 private:
  WalkSystem() = default;
  void rebuild();
  const StateVector& current() const;
  void set_initial(std::vector<Complex> rho_row_major);

  OperatorSet ops_;
  std::vector<SourceArc> sources_;
  std::vector<SinkArc> sinks_;
  std::size_t n_workers_ = 1;
  std::size_t dim_ = 0;
  DistributedLiouvillian liouvillian_;
  std::optional<StateVector> initial_;
  std::optional<StateVector> result_;
};

/// Expected survival time: Simpson integration of 1 - p_sink(t) over the
/// evenly spaced series. Requires an even number of intervals (at least 3
/// points); warns on stderr when 1 - p_sink(tq) > 1e-4 instead of
/// extrapolating.
double expected_survival_time(std::span<const double> times,
                              std::span<const double> sink_populations);

}  // namespace qsw
