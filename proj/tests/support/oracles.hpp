#pragma once

// Dense reference implementations used only by the test suites. Everything
// here is assembled with explicit Kronecker products and exponentiated with
// Eigen's Pade scaling-and-squaring, independent of the library's CSR row
// assembly and truncated-Taylor action.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <random>
#include <vector>

#include "qsw/graph.hpp"
#include "qsw/sparse.hpp"

namespace qsw::test {

using DMat = Eigen::MatrixXcd;
using DVec = Eigen::VectorXcd;

inline DMat to_eigen(const SparseMatrix& m) {
  DMat d = DMat::Zero(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto cols = m.row_cols(i);
    auto vals = m.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(cols[k])) = vals[k];
    }
  }
  return d;
}

inline DVec to_eigen(const std::vector<Complex>& v) {
  DVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

inline std::vector<Complex> from_eigen(const DVec& v) {
  std::vector<Complex> out(static_cast<std::size_t>(v.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = v(static_cast<Eigen::Index>(i));
  return out;
}

/// (L* (x) L) - 1/2 (I (x) L'L + (L'L)^T (x) I), the vectorized dissipator.
inline DMat dissipator_oracle(const DMat& l) {
  const Eigen::Index n = l.rows();
  const DMat id = DMat::Identity(n, n);
  const DMat ldl = l.adjoint() * l;
  return Eigen::kroneckerProduct(l.conjugate(), l).eval() -
         0.5 * (Eigen::kroneckerProduct(id, ldl).eval() +
                Eigen::kroneckerProduct(ldl.transpose(), id).eval());
}

/// -i c (I (x) H - H^T (x) I), the vectorized commutator of H.
inline DMat commutator_oracle(const DMat& h, Complex c) {
  const Eigen::Index n = h.rows();
  const DMat id = DMat::Identity(n, n);
  return c * (Eigen::kroneckerProduct(id, h).eval() -
              Eigen::kroneckerProduct(h.transpose(), id).eval());
}

/// Local-interaction superoperator assembled from explicit per-arc Lindblad
/// operators, with source/sink dissipators outside omega.
inline DMat local_liouvillian_oracle(double omega, const DMat& h, const DMat& m_l,
                                     const std::vector<SourceArc>& sources,
                                     const std::vector<SinkArc>& sinks) {
  const Eigen::Index n = h.rows();
  DMat out = commutator_oracle(h, Complex{0.0, -(1.0 - omega)});
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m_l(i, j) == Complex{}) continue;
      DMat lk = DMat::Zero(n, n);
      lk(i, j) = m_l(i, j);
      out += omega * dissipator_oracle(lk);
    }
  }
  const std::size_t n_base =
      static_cast<std::size_t>(n) - sources.size() - sinks.size();
  for (std::size_t k = 0; k < sources.size(); ++k) {
    DMat lk = DMat::Zero(n, n);
    lk(static_cast<Eigen::Index>(sources[k].target),
       static_cast<Eigen::Index>(n_base + k)) = std::sqrt(sources[k].rate);
    out += dissipator_oracle(lk);
  }
  for (std::size_t k = 0; k < sinks.size(); ++k) {
    DMat lk = DMat::Zero(n, n);
    lk(static_cast<Eigen::Index>(n_base + sources.size() + k),
       static_cast<Eigen::Index>(sinks[k].origin)) = std::sqrt(sinks[k].rate);
    out += dissipator_oracle(lk);
  }
  return out;
}

/// Global-interaction superoperator with optional rotating Hamiltonian.
inline DMat global_liouvillian_oracle(double omega, const DMat& h, const std::vector<DMat>& ls,
                                      const DMat* h_rot) {
  DMat out = commutator_oracle(h, Complex{0.0, -(1.0 - omega)});
  if (h_rot) out += commutator_oracle(*h_rot, Complex{0.0, omega});
  for (const DMat& l : ls) out += omega * dissipator_oracle(l);
  return out;
}

/// exp(tA) v by Eigen's dense Pade scaling-and-squaring.
inline DVec expm_action_oracle(const DMat& a, const DVec& v, double t) {
  return DMat(t * a).exp() * v;
}

inline double max_abs_diff(const DMat& a, const SparseMatrix& b) {
  return (a - to_eigen(b)).cwiseAbs().maxCoeff();
}

// ---- fixture graphs ----

/// The three-vertex digraph of the demoralisation walkthrough: two source
/// vertices feeding a common child.
inline WeightedDigraph three_vertex_digraph() {
  return WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(3, 3, {{2, 0, 1.0}, {2, 1, 1.0}}));
}

inline WeightedDigraph dimer_graph() {
  return WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}}));
}

/// Directed path: arcs j -> j+1 (column j, row j+1).
inline WeightedDigraph line_digraph(std::size_t n, double weight = 1.0) {
  std::vector<Triplet> arcs;
  for (std::size_t j = 0; j + 1 < n; ++j) arcs.push_back({j + 1, j, Complex{weight, 0.0}});
  return WeightedDigraph::from_adjacency(SparseMatrix::from_triplets(n, n, std::move(arcs)));
}

/// Undirected cycle with unit weights.
inline WeightedDigraph cycle_graph(std::size_t n) {
  std::vector<Triplet> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t next = (i + 1) % n;
    arcs.push_back({i, next, Complex{1.0, 0.0}});
    arcs.push_back({next, i, Complex{1.0, 0.0}});
  }
  return WeightedDigraph::from_adjacency(SparseMatrix::from_triplets(n, n, std::move(arcs)));
}

/// Complete digraph with seeded random weights in (0, 1).
inline WeightedDigraph complete_digraph(std::size_t n, unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<Triplet> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) arcs.push_back({i, j, Complex{weight(rng), 0.0}});
    }
  }
  return WeightedDigraph::from_adjacency(SparseMatrix::from_triplets(n, n, std::move(arcs)));
}

/// Random weighted digraph; guaranteed at least one arc.
inline WeightedDigraph random_digraph(std::mt19937& rng, std::size_t n, double density = 0.4) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 2.0);
  std::vector<Triplet> arcs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && uniform(rng) < density) arcs.push_back({i, j, Complex{weight(rng), 0.0}});
    }
  }
  if (arcs.empty()) arcs.push_back({n - 1, 0, Complex{1.0, 0.0}});
  return WeightedDigraph::from_adjacency(SparseMatrix::from_triplets(n, n, std::move(arcs)));
}

}  // namespace qsw::test
