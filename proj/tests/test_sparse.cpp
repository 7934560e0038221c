#include <doctest.h>

#include <random>

#include "qsw/sparse.hpp"
#include "support/oracles.hpp"

using qsw::Complex;
using qsw::SparseMatrix;
using qsw::Triplet;

TEST_CASE("from_triplets canonicalizes: sorted columns, summed duplicates, dropped zeros") {
  auto m = SparseMatrix::from_triplets(
      2, 3, {{1, 2, {1.0, 0.0}}, {0, 1, {2.0, 0.0}}, {0, 0, {3.0, 0.0}}, {0, 1, {-2.0, 0.0}}});
  CHECK(m.nnz() == 2);
  CHECK(m.at(0, 0) == Complex{3.0, 0.0});
  CHECK(m.at(0, 1) == Complex{});  // summed to zero and dropped
  CHECK(m.at(1, 2) == Complex{1.0, 0.0});
  auto cols = m.row_cols(0);
  CHECK(std::is_sorted(cols.begin(), cols.end()));
}

TEST_CASE("from_triplets duplicate policy and bounds") {
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, 1, {1.0, 0.0}}, {0, 1, {1.0, 0.0}}},
                                              qsw::DuplicatePolicy::Error),
                  std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, {1.0, 0.0}}}), std::out_of_range);
}

TEST_CASE("transpose and conjugate transpose") {
  auto m = SparseMatrix::from_triplets(2, 3, {{0, 2, {1.0, 2.0}}, {1, 0, {3.0, 0.0}}});
  auto t = m.transpose();
  CHECK(t.rows() == 3);
  CHECK(t.at(2, 0) == Complex{1.0, 2.0});
  CHECK(t.at(0, 1) == Complex{3.0, 0.0});
  auto h = m.conjugate_transpose();
  CHECK(h.at(2, 0) == Complex{1.0, -2.0});
}

TEST_CASE("product matches a dense accumulation") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Triplet> a_t, b_t;
  for (int k = 0; k < 20; ++k) {
    a_t.push_back({static_cast<std::size_t>(rng() % 5), static_cast<std::size_t>(rng() % 6),
                   {u(rng), u(rng)}});
    b_t.push_back({static_cast<std::size_t>(rng() % 6), static_cast<std::size_t>(rng() % 4),
                   {u(rng), u(rng)}});
  }
  auto a = SparseMatrix::from_triplets(5, 6, a_t);
  auto b = SparseMatrix::from_triplets(6, 4, b_t);
  auto c = a * b;
  auto dense = (qsw::test::to_eigen(a) * qsw::test::to_eigen(b)).eval();
  CHECK(qsw::test::max_abs_diff(dense, c) < 1e-14);
}

TEST_CASE("one norm is the maximum absolute column sum") {
  auto m = SparseMatrix::from_triplets(2, 2,
                                       {{0, 0, {3.0, 4.0}}, {1, 0, {1.0, 0.0}}, {1, 1, {-2.0, 0.0}}});
  CHECK(m.one_norm() == doctest::Approx(6.0));  // column 0: |3+4i| + 1 = 6
}

TEST_CASE("identity, resized and map_values") {
  auto id = SparseMatrix::identity(3);
  CHECK(id.nnz() == 3);
  auto grown = id.resized(5);
  CHECK(grown.rows() == 5);
  CHECK(grown.nnz() == 3);
  CHECK(grown.at(2, 2) == Complex{1.0, 0.0});
  auto scaled = id.map_values([](Complex v) { return 2.0 * v; });
  CHECK(scaled.at(1, 1) == Complex{2.0, 0.0});
  auto dropped = id.map_values([](Complex) { return Complex{}; });
  CHECK(dropped.nnz() == 0);
}

TEST_CASE("hermiticity check and max_abs_diff") {
  auto h = SparseMatrix::from_triplets(2, 2, {{0, 1, {0.0, 1.0}}, {1, 0, {0.0, -1.0}}});
  CHECK(h.is_hermitian(0.0));
  auto g = SparseMatrix::from_triplets(2, 2, {{0, 1, {0.0, 1.0}}, {1, 0, {0.0, 1.0}}});
  CHECK_FALSE(g.is_hermitian(1e-12));
  CHECK(qsw::max_abs_diff(h, g) == doctest::Approx(2.0));
}
