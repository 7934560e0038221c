#include "qsw/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsw {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_starts_(rows + 1, 0) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  m.col_indices_.resize(n);
  m.values_.assign(n, Complex{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i) {
    m.row_starts_[i] = i;
    m.col_indices_[i] = i;
  }
  m.row_starts_[n] = n;
  return m;
}

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets,
                                         DuplicatePolicy policy) {
  for (const Triplet& t : triplets) {
    if (t.row >= rows || t.col >= cols) {
      throw std::out_of_range("sparse entry (" + std::to_string(t.row) + ", " +
                              std::to_string(t.col) + ") outside " +
                              std::to_string(rows) + " x " + std::to_string(cols));
    }
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseMatrix m(rows, cols);
  m.col_indices_.reserve(triplets.size());
  m.values_.reserve(triplets.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    while (k < triplets.size() && triplets[k].row == i) {
      Complex v = triplets[k].value;
      std::size_t col = triplets[k].col;
      ++k;
      while (k < triplets.size() && triplets[k].row == i && triplets[k].col == col) {
        if (policy == DuplicatePolicy::Error) {
          throw std::invalid_argument("duplicate sparse entry at (" + std::to_string(i) +
                                      ", " + std::to_string(col) + ")");
        }
        v += triplets[k].value;
        ++k;
      }
      if (v != Complex{}) {
        m.col_indices_.push_back(col);
        m.values_.push_back(v);
      }
    }
    m.row_starts_[i + 1] = m.col_indices_.size();
  }
  return m;
}

std::span<const std::size_t> SparseMatrix::row_cols(std::size_t i) const {
  return {col_indices_.data() + row_starts_[i], row_starts_[i + 1] - row_starts_[i]};
}

std::span<const Complex> SparseMatrix::row_values(std::size_t i) const {
  return {values_.data() + row_starts_[i], row_starts_[i + 1] - row_starts_[i]};
}

Complex SparseMatrix::at(std::size_t i, std::size_t j) const {
  auto cols = row_cols(i);
  auto it = std::lower_bound(cols.begin(), cols.end(), j);
  if (it == cols.end() || *it != j) return {};
  return values_[row_starts_[i] + static_cast<std::size_t>(it - cols.begin())];
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  std::vector<std::size_t> counts(cols_ + 1, 0);
  for (std::size_t c : col_indices_) ++counts[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) counts[c + 1] += counts[c];
  t.row_starts_ = counts;
  t.col_indices_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      std::size_t pos = cursor[col_indices_[k]]++;
      t.col_indices_[pos] = i;
      t.values_[pos] = values_[k];
    }
  }
  return t;
}

SparseMatrix SparseMatrix::conjugate_transpose() const {
  SparseMatrix t = transpose();
  for (Complex& v : t.values_) v = std::conj(v);
  return t;
}

SparseMatrix SparseMatrix::scaled(Complex factor) const {
  if (factor == Complex{}) return SparseMatrix(rows_, cols_);
  SparseMatrix m = *this;
  for (Complex& v : m.values_) v *= factor;
  return m;
}

SparseMatrix SparseMatrix::map_values(const std::function<Complex(Complex)>& f) const {
  std::vector<Triplet> kept;
  kept.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      Complex v = f(values_[k]);
      if (v != Complex{}) kept.push_back({i, col_indices_[k], v});
    }
  }
  return from_triplets(rows_, cols_, std::move(kept));
}

SparseMatrix SparseMatrix::resized(std::size_t n) const {
  if (n < rows_ || n < cols_) throw std::invalid_argument("resized() cannot shrink a matrix");
  SparseMatrix m = *this;
  m.rows_ = n;
  m.cols_ = n;
  m.row_starts_.resize(n + 1, m.row_starts_.back());
  return m;
}

double SparseMatrix::one_norm() const {
  std::vector<double> col_sums(cols_, 0.0);
  for (std::size_t k = 0; k < nnz(); ++k) col_sums[col_indices_[k]] += std::abs(values_[k]);
  double best = 0.0;
  for (double s : col_sums) best = std::max(best, s);
  return best;
}

double SparseMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& v : values_) best = std::max(best, std::abs(v));
  return best;
}

bool SparseMatrix::is_hermitian(double tol) const {
  if (rows_ != cols_) return false;
  return max_abs_diff(*this, conjugate_transpose()) <= tol;
}

std::vector<Complex> SparseMatrix::to_dense() const {
  std::vector<Complex> d(rows_ * cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = row_starts_[i]; k < row_starts_[i + 1]; ++k) {
      d[i * cols_ + col_indices_[k]] = values_[k];
    }
  }
  return d;
}

SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("sparse addition dimension mismatch");
  }
  std::vector<Triplet> entries;
  entries.reserve(a.nnz() + b.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i); auto av = a.row_values(i);
    auto bc = b.row_cols(i); auto bv = b.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) entries.push_back({i, ac[k], av[k]});
    for (std::size_t k = 0; k < bc.size(); ++k) entries.push_back({i, bc[k], bv[k]});
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(entries));
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("sparse product dimension mismatch");
  // Gustavson row-by-row product with a dense accumulator.
  std::vector<Triplet> entries;
  std::vector<Complex> acc(b.cols(), Complex{});
  std::vector<char> seen(b.cols(), 0);
  std::vector<std::size_t> touched;
  touched.reserve(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    touched.clear();
    auto ac = a.row_cols(i); auto av = a.row_values(i);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      std::size_t mid = ac[k];
      Complex w = av[k];
      auto bc = b.row_cols(mid); auto bv = b.row_values(mid);
      for (std::size_t l = 0; l < bc.size(); ++l) {
        if (!seen[bc[l]]) {
          seen[bc[l]] = 1;
          touched.push_back(bc[l]);
        }
        acc[bc[l]] += w * bv[l];
      }
    }
    for (std::size_t c : touched) {
      if (acc[c] != Complex{}) entries.push_back({i, c, acc[c]});
      acc[c] = Complex{};
      seen[c] = 0;
    }
  }
  return SparseMatrix::from_triplets(a.rows(), b.cols(), std::move(entries));
}

double max_abs_diff(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff dimension mismatch");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i); auto av = a.row_values(i);
    auto bc = b.row_cols(i); auto bv = b.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ac.size() || q < bc.size()) {
      if (q == bc.size() || (p < ac.size() && ac[p] < bc[q])) {
        best = std::max(best, std::abs(av[p])); ++p;
      } else if (p == ac.size() || bc[q] < ac[p]) {
        best = std::max(best, std::abs(bv[q])); ++q;
      } else {
        best = std::max(best, std::abs(av[p] - bv[q])); ++p; ++q;
      }
    }
  }
  return best;
}

}  // namespace qsw
