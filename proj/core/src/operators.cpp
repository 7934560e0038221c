#include "qsw/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsw {

SparseMatrix local_lindblad(const SparseMatrix& m) {
  return m.map_values([](Complex v) { return Complex{std::sqrt(std::abs(v)), 0.0}; });
}

SparseMatrix global_lindblad(const WeightedDigraph& g) { return g.adjacency(); }

VertexSubspaces nm_vsets(const WeightedDigraph& gu) {
  const SparseMatrix& a = gu.adjacency();
  if (!(a.transpose() == a)) {
    throw std::invalid_argument("nm_vsets requires a symmetric adjacency matrix");
  }
  VertexSubspaces v;
  v.dims.resize(a.rows());
  v.offsets.resize(a.rows() + 1);
  v.offsets[0] = 0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::size_t in_arcs = a.row_cols(i).size();
    v.dims[i] = in_arcs > 0 ? in_arcs : 1;
    v.offsets[i + 1] = v.offsets[i] + v.dims[i];
  }
  return v;
}

namespace {

void check_vsets(const WeightedDigraph& g, const VertexSubspaces& vsets) {
  if (vsets.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument("vertex subspaces were built for a different graph size");
  }
}

}  // namespace

SparseMatrix demoralised_weights(const WeightedDigraph& g, const VertexSubspaces& vsets) {
  check_vsets(g, vsets);
  const SparseMatrix& a = g.adjacency();
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t src = cols[k];
      const double sub_deg = static_cast<double>(vsets.dims[i] * vsets.dims[src]);
      const double w = 1.0 / std::sqrt(sub_deg * vals[k].real());
      for (std::size_t l = 0; l < vsets.dims[i]; ++l) {
        for (std::size_t j = 0; j < vsets.dims[src]; ++j) {
          entries.push_back({vsets.offsets[i] + l, vsets.offsets[src] + j, Complex{w, 0.0}});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(vsets.total_dim(), vsets.total_dim(), std::move(entries));
}

SparseMatrix nm_H(double gamma, const WeightedDigraph& gu, const VertexSubspaces& vsets) {
  return generator_matrix(gamma, demoralised_weights(gu, vsets));
}

namespace {

// exp(2*pi*1i * k / n) with exact values at quarter and sixth turns, so the
// orthogonality cancellations of the Fourier phases hold exactly for the
// small subspaces where they matter.
Complex unit_root(std::size_t k, std::size_t n) {
  const std::size_t r = k % n;
  if (4 * r % n == 0) {
    switch (4 * r / n) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  if (12 * r % n == 0) {
    const double half_sqrt3 = 0.5 * std::sqrt(3.0);
    switch (12 * r / n) {
      case 1: return {half_sqrt3, 0.5};
      case 2: return {0.5, half_sqrt3};
      case 4: return {-0.5, half_sqrt3};
      case 5: return {-half_sqrt3, 0.5};
      case 7: return {-half_sqrt3, -0.5};
      case 8: return {-0.5, -half_sqrt3};
      case 10: return {0.5, -half_sqrt3};
      default: return {half_sqrt3, -0.5};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

SparseMatrix nm_L(double gamma, const WeightedDigraph& g, const VertexSubspaces& vsets) {
  if (!(gamma > 0.0)) throw std::invalid_argument("transition rate gamma must be positive");
  check_vsets(g, vsets);
  const SparseMatrix& a = g.adjacency();
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto cols = a.row_cols(i);
    auto vals = a.row_values(i);
    const std::size_t d = vsets.dims[i];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const std::size_t src = cols[k];
      const double sub_deg = static_cast<double>(d * vsets.dims[src]);
      const double w = gamma / std::sqrt(sub_deg * vals[k].real());
      // k-th incoming arc of vertex i selects column (k+1) mod d of the
      // destination-subspace Fourier matrix.
      const std::size_t fcol = (k + 1) % d;
      for (std::size_t l = 0; l < d; ++l) {
        const Complex phase = unit_root(l * fcol, d);
        for (std::size_t j = 0; j < vsets.dims[src]; ++j) {
          entries.push_back({vsets.offsets[i] + l, vsets.offsets[src] + j, w * phase});
        }
      }
    }
  }
  return SparseMatrix::from_triplets(vsets.total_dim(), vsets.total_dim(), std::move(entries));
}

SparseMatrix nm_H_rot(const VertexSubspaces& vsets, Dim2Rotation dim2) {
  std::vector<Triplet> entries;
  const Complex plus_i{0.0, 1.0};
  for (std::size_t v = 0; v < vsets.vertex_count(); ++v) {
    const std::size_t d = vsets.dims[v];
    const std::size_t base = vsets.offsets[v];
    if (d == 1) continue;
    if (d == 2) {
      // (k+1) mod 2 and (k-1) mod 2 coincide; the +i and -i cases name the
      // same two entries.
      if (dim2 == Dim2Rotation::PauliY) {
        entries.push_back({base + 1, base, plus_i});
        entries.push_back({base, base + 1, -plus_i});
      }
      continue;
    }
    for (std::size_t k = 0; k < d; ++k) {
      entries.push_back({base + (k + 1) % d, base + k, plus_i});
      entries.push_back({base + (k + d - 1) % d, base + k, -plus_i});
    }
  }
  return SparseMatrix::from_triplets(vsets.total_dim(), vsets.total_dim(), std::move(entries));
}

std::vector<double> nm_rho_map(const std::vector<double>& p, const VertexSubspaces& vsets) {
  if (p.size() != vsets.vertex_count()) {
    throw std::invalid_argument("probability vector length does not match the vertex count");
  }
  double total = 0.0;
  for (double x : p) {
    if (x < 0.0) throw std::invalid_argument("probabilities must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("probability vector is not normalized (sum = " +
                                std::to_string(total) + ")");
  }
  std::vector<double> expanded(vsets.total_dim(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double share = p[i] / static_cast<double>(vsets.dims[i]);
    for (std::size_t l = 0; l < vsets.dims[i]; ++l) expanded[vsets.offsets[i] + l] = share;
  }
  return expanded;
}

std::vector<double> nm_measure(const std::vector<double>& rho_diag,
                               const VertexSubspaces& vsets) {
  if (rho_diag.size() != vsets.total_dim()) {
    throw std::invalid_argument("diagonal length does not match the expanded dimension");
  }
  std::vector<double> p(vsets.vertex_count(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t l = 0; l < vsets.dims[i]; ++l) p[i] += rho_diag[vsets.offsets[i] + l];
  }
  return p;
}

}  // namespace qsw
