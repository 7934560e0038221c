#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qsw/graph.hpp"
#include "qsw/operators.hpp"
#include "qsw/partition.hpp"
#include "qsw/state.hpp"

namespace qsw {

/// Row-partitioned vectorized superoperator in distributed CSR form.
///
/// The full matrix acts on vec(rho) with the column-major mapping of
/// StateVector. Each worker owns a contiguous row range of the matrix plus
/// the exchange lists and cached 1-norm power bounds needed to drive the
/// matrix exponential action.
class DistributedLiouvillian {
 public:
  std::size_t dim() const { return partition_.dim(); }
  double omega() const { return omega_; }
  const RowPartition& partition() const { return partition_; }
  /// Per-worker row blocks with global column indices; concatenating them
  /// reproduces the full CSR matrix exactly.
  const std::vector<SparseMatrix>& local_blocks() const { return blocks_; }
  const CommPlan& comm_plan() const { return plan_; }
  /// Upper bounds on ||L^n||_1 for n = 1..9 (exact when dim <= 4096).
  std::span<const double, 9> one_norms() const { return one_norms_; }

  /// Concatenation of the local blocks into one CSR matrix.
  SparseMatrix gather_full() const;

  /// y[lr] = scale * sum_k A(w) x for worker w's rows. `ext` is caller-owned
  /// scratch for the gathered remote elements. Safe to call concurrently for
  /// distinct workers as long as x is not mutated.
  void worker_multiply(std::size_t w, const std::vector<std::vector<Complex>>& x_segments,
                       std::span<Complex> y, std::vector<Complex>& ext, Complex scale) const;

 private:
  struct ExtSource {
    std::size_t owner;
    std::size_t offset;
  };
  struct WorkerIndex {
    // Column slots parallel to the block's col_indices: slot < own segment
    // size addresses the worker's own x segment, anything above addresses the
    // gathered ext buffer.
    std::vector<std::size_t> col_slots;
    std::vector<ExtSource> ext_sources;
  };

  double omega_ = 0.0;
  RowPartition partition_;
  std::vector<SparseMatrix> blocks_;
  CommPlan plan_;
  std::array<double, 9> one_norms_{};
  std::vector<WorkerIndex> index_;

  friend class LiouvillianBuilder;
};

/// Assembles the local-interaction superoperator directly from H and the
/// condensed Lindblad matrix, with source/sink dissipators outside omega:
///
///   L = -i(1-w)(I(x)H - H^T(x)I) + w*sum_k D_k + sum D_source + sum D_sink
///
/// h and m_l must already be padded to the augmented vertex count; sources
/// and sinks follow the augment() vertex ordering (sources first). Each
/// source/sink dissipator acts at its listed rate.
DistributedLiouvillian build_local(double omega, const SparseMatrix& h, const SparseMatrix& m_l,
                                   const std::vector<SourceArc>& sources,
                                   const std::vector<SinkArc>& sinks, std::size_t n_workers);

/// Assembles the global-interaction superoperator from explicit Lindblad
/// operators, with the optional rotating-Hamiltonian term of the
/// non-moralising variant:
///
///   L = -i(1-w)(I(x)H - H^T(x)I) + w*[ +i(I(x)Hrot - Hrot^T(x)I) + sum_k D_k ]
DistributedLiouvillian build_global(double omega, const SparseMatrix& h,
                                    const std::vector<SparseMatrix>& lindblads,
                                    const std::optional<SparseMatrix>& h_rot,
                                    std::size_t n_workers);

/// Upper bounds on ||L^n||_1 for n = 1..9. Exact (explicit sparse powers) up
/// to dim 4096; above that a cheap |L|-power bound that still satisfies the
/// upper-bound contract required by the step-parameter selection.
std::array<double, 9> one_norm_series(const DistributedLiouvillian& l);

/// y = L x over matching partitions.
StateVector spmv(const DistributedLiouvillian& l, const StateVector& x);

}  // namespace qsw
