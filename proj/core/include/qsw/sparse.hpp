#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qsw {

using Complex = std::complex<double>;

/// One coordinate-format entry used when assembling a sparse matrix.
struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value{};
};

enum class DuplicatePolicy { Error, Sum };

/// Complex double-precision sparse matrix in canonical CSR form.
///
/// Canonical means: row pointers non-decreasing, column indices strictly
/// increasing within each row, and no explicitly stored zeros. All factory
/// functions and operations maintain this form, so downstream code may rely
/// on it without re-sorting.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> triplets,
                                    DuplicatePolicy policy = DuplicatePolicy::Sum);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::size_t> row_starts() const { return row_starts_; }
  std::span<const std::size_t> col_indices() const { return col_indices_; }
  std::span<const Complex> values() const { return values_; }

  /// Column indices of row i (canonical: strictly increasing).
  std::span<const std::size_t> row_cols(std::size_t i) const;
  /// Values of row i, parallel to row_cols(i).
  std::span<const Complex> row_values(std::size_t i) const;

  /// Value at (i, j); zero when no entry is stored.
  Complex at(std::size_t i, std::size_t j) const;

  SparseMatrix transpose() const;
  SparseMatrix conjugate_transpose() const;
  SparseMatrix scaled(Complex factor) const;
  /// Entrywise transform preserving the sparsity pattern. Results that are
  /// exactly zero are dropped to keep the matrix canonical.
  SparseMatrix map_values(const std::function<Complex(Complex)>& f) const;
  /// Same matrix embedded in the top-left corner of an n x n matrix.
  SparseMatrix resized(std::size_t n) const;

  double one_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;

  /// Row-major dense expansion (small matrices only; used by diagnostics).
  std::vector<Complex> to_dense() const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_starts_{0};
  std::vector<std::size_t> col_indices_;
  std::vector<Complex> values_;
};

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);

/// Largest |a_ij - b_ij| over the union of both sparsity patterns.
double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b);

}  // namespace qsw
