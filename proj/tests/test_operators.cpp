#include <doctest.h>

#include <cmath>
#include <random>

#include "qsw/operators.hpp"
#include "support/oracles.hpp"

using qsw::Complex;
using qsw::SparseMatrix;
using qsw::VertexSubspaces;
using qsw::WeightedDigraph;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("local_lindblad: entrywise sqrt of magnitudes, pattern preserved") {
  auto m = SparseMatrix::from_triplets(
      2, 2, {{0, 0, {1.0, 0.0}}, {0, 1, {-1.0, 0.0}}, {1, 0, {-1.0, 0.0}}, {1, 1, {1.0, 0.0}}});
  auto ml = qsw::local_lindblad(m);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(ml.at(i, j) == Complex{1.0, 0.0});
  }
  CHECK(qsw::local_lindblad(SparseMatrix(3, 3)).nnz() == 0);
  auto neg = SparseMatrix::from_triplets(1, 1, {{0, 0, {-4.0, 0.0}}});
  CHECK(qsw::local_lindblad(neg).at(0, 0) == Complex{2.0, 0.0});
}

TEST_CASE("global_lindblad is the adjacency matrix") {
  auto g = qsw::test::three_vertex_digraph();
  CHECK(qsw::global_lindblad(g) == g.adjacency());

  auto weighted = WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(2, 2, {{1, 0, {0.5, 0.0}}}));
  CHECK(qsw::global_lindblad(weighted).at(1, 0) == Complex{0.5, 0.0});
}

TEST_CASE("nm_vsets: dims follow in-arc counts with a floor of one") {
  auto gu = symmetrize(qsw::test::three_vertex_digraph());
  auto v = qsw::nm_vsets(gu);
  CHECK(v.dims == std::vector<std::size_t>{1, 1, 2});
  CHECK(v.offsets == std::vector<std::size_t>{0, 1, 2, 4});
  CHECK(v.total_dim() == 4);

  auto edgeless = WeightedDigraph::from_adjacency(SparseMatrix(2, 2));
  CHECK(qsw::nm_vsets(edgeless).dims == std::vector<std::size_t>{1, 1});

  auto k3 = qsw::test::cycle_graph(3);  // K3 == C3
  CHECK(qsw::nm_vsets(k3).dims == std::vector<std::size_t>{2, 2, 2});

  CHECK_THROWS_AS(qsw::nm_vsets(qsw::test::three_vertex_digraph()), std::invalid_argument);
}

TEST_CASE("nm_vsets: dims equal brute-force edge counts on random graphs") {
  std::mt19937 rng(3);
  for (int it = 0; it < 15; ++it) {
    const std::size_t n = 2 + rng() % 11;
    auto gu = symmetrize(qsw::test::random_digraph(rng, n));
    auto v = qsw::nm_vsets(gu);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = 0;
      for (std::size_t k = 0; k < n; ++k) {
        if (gu.adjacency().at(i, k) != Complex{}) ++count;
      }
      CHECK(v.dims[i] == std::max<std::size_t>(count, 1));
    }
  }
}

TEST_CASE("demoralised_weights: worked example and weight scaling") {
  auto g = qsw::test::three_vertex_digraph();
  auto gu = symmetrize(g);
  auto v = qsw::nm_vsets(gu);

  auto wd = qsw::demoralised_weights(gu, v);
  CHECK(wd.rows() == 4);
  CHECK(std::abs(wd.at(0, 2).real() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(wd.at(0, 3).real() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(wd.at(2, 0).real() - kInvSqrt2) < 1e-15);
  CHECK(std::abs(wd.at(3, 1).real() - kInvSqrt2) < 1e-15);
  CHECK(wd.at(0, 1) == Complex{});

  // single arc between two singleton subspaces
  auto arc1 = WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(2, 2, {{1, 0, {1.0, 0.0}}}));
  auto v1 = qsw::nm_vsets(symmetrize(arc1));
  CHECK(qsw::demoralised_weights(arc1, v1).at(1, 0) == Complex{1.0, 0.0});

  auto arc4 = WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(2, 2, {{1, 0, {4.0, 0.0}}}));
  CHECK(qsw::demoralised_weights(arc4, qsw::nm_vsets(symmetrize(arc4))).at(1, 0) ==
        Complex{0.5, 0.0});
}

TEST_CASE("nm_H: worked example, zero graph, gamma linearity, hermiticity") {
  auto gu = symmetrize(qsw::test::three_vertex_digraph());
  auto v = qsw::nm_vsets(gu);
  auto h = qsw::nm_H(1.0, gu, v);
  CHECK(h.rows() == 4);
  CHECK(h.is_hermitian(1e-15));
  CHECK(std::abs(h.at(0, 2).real() + kInvSqrt2) < 1e-15);
  CHECK(std::abs(h.at(3, 1).real() + kInvSqrt2) < 1e-15);
  CHECK(std::abs(h.at(0, 0).real() - std::sqrt(2.0)) < 1e-15);

  auto edgeless = WeightedDigraph::from_adjacency(SparseMatrix(2, 2));
  CHECK(qsw::nm_H(1.0, edgeless, qsw::nm_vsets(edgeless)).nnz() == 0);

  auto h2 = qsw::nm_H(2.0, gu, v);
  CHECK(qsw::max_abs_diff(h2, h.scaled({2.0, 0.0})) < 1e-15);

  std::mt19937 rng(17);
  for (int it = 0; it < 10; ++it) {
    auto rgu = symmetrize(qsw::test::random_digraph(rng, 2 + rng() % 9));
    auto rv = qsw::nm_vsets(rgu);
    CHECK(qsw::nm_H(1.5, rgu, rv).is_hermitian(1e-15));
  }
}

TEST_CASE("nm_L: Fourier phases of the destination subspace") {
  auto g = qsw::test::three_vertex_digraph();
  auto v = qsw::nm_vsets(symmetrize(g));
  auto l = qsw::nm_L(1.0, g, v);

  // first incoming arc of the child vertex picks Fourier column 1: phases (+1, -1)
  CHECK(std::abs(l.at(2, 0) - Complex{kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(l.at(3, 0) - Complex{-kInvSqrt2, 0.0}) < 1e-15);
  // second arc wraps to column 0: phases (+1, +1)
  CHECK(std::abs(l.at(2, 1) - Complex{kInvSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(l.at(3, 1) - Complex{kInvSqrt2, 0.0}) < 1e-15);

  // orthogonal columns destroy the inter-parent cross terms
  auto ldl = l.conjugate_transpose() * l;
  CHECK(std::abs(ldl.at(0, 1)) < 1e-15);
  CHECK(std::abs(ldl.at(0, 0) - Complex{1.0, 0.0}) < 1e-15);

  // a dim-1 destination reduces to the demoralised weight
  auto arc = WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(2, 2, {{1, 0, {1.0, 0.0}}}));
  auto va = qsw::nm_vsets(symmetrize(arc));
  CHECK(qsw::nm_L(1.0, arc, va) == qsw::demoralised_weights(arc, va));
}

TEST_CASE("nm_H_rot: canceling dim-2 blocks, exact dim-3 block") {
  VertexSubspaces v112{{0, 1, 2, 4}, {1, 1, 2}};
  CHECK(qsw::nm_H_rot(v112).nnz() == 0);

  auto pauli = qsw::nm_H_rot(v112, qsw::Dim2Rotation::PauliY);
  CHECK(pauli.at(3, 2) == Complex{0.0, 1.0});
  CHECK(pauli.at(2, 3) == Complex{0.0, -1.0});
  CHECK(pauli.is_hermitian(0.0));

  VertexSubspaces ones{{0, 1, 2}, {1, 1}};
  CHECK(qsw::nm_H_rot(ones).nnz() == 0);

  VertexSubspaces v3{{0, 3}, {3}};
  auto r = qsw::nm_H_rot(v3);
  const Complex i{0.0, 1.0};
  CHECK(r.at(0, 1) == -i);
  CHECK(r.at(0, 2) == i);
  CHECK(r.at(1, 0) == i);
  CHECK(r.at(1, 2) == -i);
  CHECK(r.at(2, 0) == -i);
  CHECK(r.at(2, 1) == i);
  CHECK(r.is_hermitian(0.0));
}

TEST_CASE("nm_rho_map and nm_measure") {
  VertexSubspaces v{{0, 1, 2, 4}, {1, 1, 2}};
  CHECK(qsw::nm_rho_map({1.0, 0.0, 0.0}, v) == std::vector<double>{1.0, 0.0, 0.0, 0.0});
  CHECK(qsw::nm_rho_map({0.0, 0.0, 1.0}, v) == std::vector<double>{0.0, 0.0, 0.5, 0.5});

  VertexSubspaces flat{{0, 1, 2, 3}, {1, 1, 1}};
  const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(qsw::nm_rho_map(uniform, flat) == uniform);

  CHECK_THROWS_AS(qsw::nm_rho_map({0.6, 0.3, 0.0}, v), std::invalid_argument);
  CHECK_THROWS_AS(qsw::nm_rho_map({1.5, -0.5, 0.0}, v), std::invalid_argument);

  CHECK(qsw::nm_measure({1.0, 0.0, 0.0, 0.0}, v) == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(qsw::nm_measure({0.0, 0.0, 0.3, 0.7}, v) == std::vector<double>{0.0, 0.0, 1.0});

  std::mt19937 rng(23);
  for (int it = 0; it < 10; ++it) {
    auto gu = symmetrize(qsw::test::random_digraph(rng, 2 + rng() % 9));
    auto vs = qsw::nm_vsets(gu);
    std::vector<double> p(vs.vertex_count());
    double total = 0.0;
    for (double& x : p) { x = (rng() % 100) + 1.0; total += x; }
    for (double& x : p) x /= total;
    auto back = qsw::nm_measure(qsw::nm_rho_map(p, vs), vs);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(back[i] == doctest::Approx(p[i]).epsilon(1e-14));
  }
}
