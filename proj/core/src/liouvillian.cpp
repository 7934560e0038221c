#include "qsw/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace qsw {

namespace {

constexpr std::size_t kExactNormDimLimit = 4096;

double hermiticity_tolerance(const SparseMatrix& m) {
  return 1e-15 * std::max(1.0, m.max_abs());
}

// Column sums of |m_ij|^2 (total decay rate sourced from each column).
std::vector<double> column_square_sums(const SparseMatrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  auto cols = m.col_indices();
  auto vals = m.values();
  for (std::size_t k = 0; k < m.nnz(); ++k) sums[cols[k]] += std::norm(vals[k]);
  return sums;
}

}  // namespace

/// Shared assembly: partitions the row space, runs a per-row emitter on every
/// worker, then derives the communication plan, engine index and norm series.
class LiouvillianBuilder {
 public:
  using RowEmitter =
      std::function<void(std::size_t row, std::vector<Triplet>& out, std::size_t local_row)>;

  static DistributedLiouvillian build(double omega, std::size_t dim, std::size_t n_workers,
                                      const RowEmitter& emit) {
    DistributedLiouvillian l;
    l.omega_ = omega;
    l.partition_ = RowPartition::even(dim, n_workers);
    l.blocks_.resize(n_workers);

    // Construction is independent per worker once the operators are known.
    WorkerPool pool(n_workers);
    pool.run([&](std::size_t w) {
      std::vector<Triplet> entries;
      const std::size_t r0 = l.partition_.begin(w);
      const std::size_t r1 = l.partition_.end(w);
      for (std::size_t r = r0; r < r1; ++r) emit(r, entries, r - r0);
      l.blocks_[w] = SparseMatrix::from_triplets(r1 - r0, dim, std::move(entries));
    });

    l.plan_ = plan_communication(l.partition_, l.blocks_);

    // Engine index: remap global columns onto [own segment | ext buffer].
    l.index_.resize(n_workers);
    for (std::size_t w = 0; w < n_workers; ++w) {
      std::vector<std::size_t> ext;
      for (const PeerExchange& ex : l.plan_[w]) {
        ext.insert(ext.end(), ex.recv.begin(), ex.recv.end());
      }
      std::sort(ext.begin(), ext.end());
      auto& idx = l.index_[w];
      idx.ext_sources.reserve(ext.size());
      for (std::size_t g : ext) {
        const std::size_t owner = l.partition_.owner(g);
        idx.ext_sources.push_back({owner, g - l.partition_.begin(owner)});
      }
      const std::size_t n_own = l.partition_.size(w);
      idx.col_slots.reserve(l.blocks_[w].nnz());
      for (std::size_t c : l.blocks_[w].col_indices()) {
        if (c >= l.partition_.begin(w) && c < l.partition_.end(w)) {
          idx.col_slots.push_back(c - l.partition_.begin(w));
        } else {
          auto it = std::lower_bound(ext.begin(), ext.end(), c);
          idx.col_slots.push_back(n_own + static_cast<std::size_t>(it - ext.begin()));
        }
      }
    }

    l.one_norms_ = one_norm_series(l);
    return l;
  }
};

SparseMatrix DistributedLiouvillian::gather_full() const {
  std::vector<Triplet> entries;
  std::size_t total = 0;
  for (const SparseMatrix& b : blocks_) total += b.nnz();
  entries.reserve(total);
  for (std::size_t w = 0; w < blocks_.size(); ++w) {
    const std::size_t r0 = partition_.begin(w);
    for (std::size_t lr = 0; lr < blocks_[w].rows(); ++lr) {
      auto cols = blocks_[w].row_cols(lr);
      auto vals = blocks_[w].row_values(lr);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        entries.push_back({r0 + lr, cols[k], vals[k]});
      }
    }
  }
  return SparseMatrix::from_triplets(dim(), dim(), std::move(entries));
}

void DistributedLiouvillian::worker_multiply(std::size_t w,
                                             const std::vector<std::vector<Complex>>& x_segments,
                                             std::span<Complex> y, std::vector<Complex>& ext,
                                             Complex scale) const {
  const WorkerIndex& idx = index_[w];
  ext.resize(idx.ext_sources.size());
  for (std::size_t e = 0; e < idx.ext_sources.size(); ++e) {
    ext[e] = x_segments[idx.ext_sources[e].owner][idx.ext_sources[e].offset];
  }
  const std::vector<Complex>& own = x_segments[w];
  const std::size_t n_own = own.size();
  const SparseMatrix& block = blocks_[w];
  auto starts = block.row_starts();
  auto vals = block.values();
  for (std::size_t lr = 0; lr < block.rows(); ++lr) {
    Complex acc{};
    for (std::size_t k = starts[lr]; k < starts[lr + 1]; ++k) {
      const std::size_t s = idx.col_slots[k];
      acc += vals[k] * (s < n_own ? own[s] : ext[s - n_own]);
    }
    y[lr] = scale * acc;
  }
}

DistributedLiouvillian build_local(double omega, const SparseMatrix& h, const SparseMatrix& m_l,
                                   const std::vector<SourceArc>& sources,
                                   const std::vector<SinkArc>& sinks, std::size_t n_workers) {
  const std::size_t n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("Hamiltonian must be square");
  if (m_l.rows() != n || m_l.cols() != n) {
    throw std::invalid_argument("condensed Lindblad matrix dimension mismatch");
  }
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must be in [0, 1]");
  if (!h.is_hermitian(hermiticity_tolerance(h))) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  if (n < sources.size() + sinks.size()) {
    throw std::invalid_argument("operator dimension smaller than the augmentation");
  }
  // Vertex layout matches augment(): base block, then sources, then sinks.
  const std::size_t n_base = n - sources.size() - sinks.size();
  for (const SourceArc& s : sources) {
    if (s.target >= n_base) throw std::out_of_range("source target out of range");
  }
  for (const SinkArc& s : sinks) {
    if (s.origin >= n_base) throw std::out_of_range("sink origin out of range");
  }

  const SparseMatrix ht = h.transpose();
  const std::vector<double> d_local = column_square_sums(m_l);
  std::vector<double> d_ss(n, 0.0);
  for (std::size_t k = 0; k < sources.size(); ++k) d_ss[n_base + k] += sources[k].rate;
  for (const SinkArc& s : sinks) d_ss[s.origin] += s.rate;

  const Complex coh = Complex{0.0, -(1.0 - omega)};

  auto emit = [&](std::size_t r, std::vector<Triplet>& out, std::size_t lr) {
    const std::size_t j = r / n;  // rho column
    const std::size_t i = r % n;  // rho row

    if (coh != Complex{}) {
      // -i(1-w) (I (x) H): row i of H within the j-th column block.
      auto hc = h.row_cols(i);
      auto hv = h.row_values(i);
      for (std::size_t k = 0; k < hc.size(); ++k) {
        out.push_back({lr, j * n + hc[k], coh * hv[k]});
      }
      // +i(1-w) (H^T (x) I): column j of H scattered across column blocks.
      auto tc = ht.row_cols(j);
      auto tv = ht.row_values(j);
      for (std::size_t k = 0; k < tc.size(); ++k) {
        out.push_back({lr, tc[k] * n + i, -coh * tv[k]});
      }
    }

    // Dissipator decay: -(1/2) {L'L, rho} touches row i and column j of rho.
    const double decay =
        0.5 * (omega * (d_local[i] + d_local[j]) + d_ss[i] + d_ss[j]);
    if (decay != 0.0) out.push_back({lr, r, Complex{-decay, 0.0}});

    if (i == j) {
      // Population transfer L rho L' lands on the vec diagonal.
      if (omega != 0.0) {
        auto mc = m_l.row_cols(i);
        auto mv = m_l.row_values(i);
        for (std::size_t k = 0; k < mc.size(); ++k) {
          out.push_back({lr, mc[k] * n + mc[k], Complex{omega * std::norm(mv[k]), 0.0}});
        }
      }
      for (std::size_t k = 0; k < sources.size(); ++k) {
        if (sources[k].target == i) {
          const std::size_t u = n_base + k;
          out.push_back({lr, u * n + u, Complex{sources[k].rate, 0.0}});
        }
      }
      for (std::size_t k = 0; k < sinks.size(); ++k) {
        if (n_base + sources.size() + k == i) {
          const std::size_t v = sinks[k].origin;
          out.push_back({lr, v * n + v, Complex{sinks[k].rate, 0.0}});
        }
      }
    }
  };

  return LiouvillianBuilder::build(omega, n * n, n_workers, emit);
}

DistributedLiouvillian build_global(double omega, const SparseMatrix& h,
                                    const std::vector<SparseMatrix>& lindblads,
                                    const std::optional<SparseMatrix>& h_rot,
                                    std::size_t n_workers) {
  const std::size_t n = h.rows();
  if (h.cols() != n) throw std::invalid_argument("Hamiltonian must be square");
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must be in [0, 1]");
  if (!h.is_hermitian(hermiticity_tolerance(h))) {
    throw std::invalid_argument("Hamiltonian must be Hermitian");
  }
  for (const SparseMatrix& l : lindblads) {
    if (l.rows() != n || l.cols() != n) {
      throw std::invalid_argument("Lindblad operator dimension mismatch");
    }
  }
  if (h_rot && (h_rot->rows() != n || h_rot->cols() != n)) {
    throw std::invalid_argument("rotating Hamiltonian dimension mismatch");
  }

  const SparseMatrix ht = h.transpose();
  std::optional<SparseMatrix> hrt;
  if (h_rot) hrt = h_rot->transpose();

  // Explicit L'L (and its transpose) per Lindblad operator.
  std::vector<SparseMatrix> lt_l, lt_l_t;
  lt_l.reserve(lindblads.size());
  for (const SparseMatrix& l : lindblads) {
    SparseMatrix s = l.conjugate_transpose() * l;
    lt_l_t.push_back(s.transpose());
    lt_l.push_back(std::move(s));
  }

  const Complex coh = Complex{0.0, -(1.0 - omega)};
  const Complex rot = Complex{0.0, omega};

  auto emit = [&](std::size_t r, std::vector<Triplet>& out, std::size_t lr) {
    const std::size_t j = r / n;
    const std::size_t i = r % n;

    if (coh != Complex{}) {
      auto hc = h.row_cols(i);
      auto hv = h.row_values(i);
      for (std::size_t k = 0; k < hc.size(); ++k) {
        out.push_back({lr, j * n + hc[k], coh * hv[k]});
      }
      auto tc = ht.row_cols(j);
      auto tv = ht.row_values(j);
      for (std::size_t k = 0; k < tc.size(); ++k) {
        out.push_back({lr, tc[k] * n + i, -coh * tv[k]});
      }
    }
    if (h_rot && rot != Complex{}) {
      auto hc = h_rot->row_cols(i);
      auto hv = h_rot->row_values(i);
      for (std::size_t k = 0; k < hc.size(); ++k) {
        out.push_back({lr, j * n + hc[k], rot * hv[k]});
      }
      auto tc = hrt->row_cols(j);
      auto tv = hrt->row_values(j);
      for (std::size_t k = 0; k < tc.size(); ++k) {
        out.push_back({lr, tc[k] * n + i, -rot * tv[k]});
      }
    }

    if (omega != 0.0) {
      for (std::size_t kl = 0; kl < lindblads.size(); ++kl) {
        const SparseMatrix& l = lindblads[kl];
        // w (L* (x) L)
        auto lc = l.row_cols(j);
        auto lv = l.row_values(j);
        auto rc = l.row_cols(i);
        auto rv = l.row_values(i);
        for (std::size_t a = 0; a < lc.size(); ++a) {
          const Complex left = omega * std::conj(lv[a]);
          for (std::size_t b = 0; b < rc.size(); ++b) {
            out.push_back({lr, lc[a] * n + rc[b], left * rv[b]});
          }
        }
        // -w/2 (I (x) L'L)
        auto sc = lt_l[kl].row_cols(i);
        auto sv = lt_l[kl].row_values(i);
        for (std::size_t a = 0; a < sc.size(); ++a) {
          out.push_back({lr, j * n + sc[a], -0.5 * omega * sv[a]});
        }
        // -w/2 ((L'L)^T (x) I)
        auto stc = lt_l_t[kl].row_cols(j);
        auto stv = lt_l_t[kl].row_values(j);
        for (std::size_t a = 0; a < stc.size(); ++a) {
          out.push_back({lr, stc[a] * n + i, -0.5 * omega * stv[a]});
        }
      }
    }
  };

  return LiouvillianBuilder::build(omega, n * n, n_workers, emit);
}

std::array<double, 9> one_norm_series(const DistributedLiouvillian& l) {
  std::array<double, 9> norms{};
  if (l.dim() <= kExactNormDimLimit) {
    const SparseMatrix full = l.gather_full();
    SparseMatrix power = full;
    norms[0] = power.one_norm();
    for (std::size_t p = 1; p < norms.size(); ++p) {
      power = power * full;
      norms[p] = power.one_norm();
    }
    return norms;
  }
  // Column-sum bound through |L|: max(1^T |L|^n) >= ||L^n||_1, computed with
  // n successive row-vector products. Exact for n = 1.
  std::vector<double> v(l.dim(), 1.0);
  std::vector<double> next(l.dim());
  for (std::size_t p = 0; p < norms.size(); ++p) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t w = 0; w < l.local_blocks().size(); ++w) {
      const SparseMatrix& block = l.local_blocks()[w];
      const std::size_t r0 = l.partition().begin(w);
      for (std::size_t lr = 0; lr < block.rows(); ++lr) {
        const double vr = v[r0 + lr];
        if (vr == 0.0) continue;
        auto cols = block.row_cols(lr);
        auto vals = block.row_values(lr);
        for (std::size_t k = 0; k < cols.size(); ++k) {
          next[cols[k]] += vr * std::abs(vals[k]);
        }
      }
    }
    std::swap(v, next);
    norms[p] = *std::max_element(v.begin(), v.end());
  }
  return norms;
}

StateVector spmv(const DistributedLiouvillian& l, const StateVector& x) {
  if (!(x.partition == l.partition())) {
    throw std::invalid_argument("state vector partition does not match the Liouvillian");
  }
  StateVector y;
  y.partition = x.partition;
  y.segments.resize(x.segments.size());
  WorkerPool pool(l.partition().worker_count());
  pool.run([&](std::size_t w) {
    y.segments[w].resize(x.segments[w].size());
    std::vector<Complex> ext;
    l.worker_multiply(w, x.segments, y.segments[w], ext, Complex{1.0, 0.0});
  });
  return y;
}

}  // namespace qsw
