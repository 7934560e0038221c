#include "qsw/state.hpp"

#include <stdexcept>

namespace qsw {

StateVector StateVector::scatter(const std::vector<Complex>& full,
                                 const RowPartition& partition) {
  if (full.size() != partition.dim()) {
    throw std::invalid_argument("vector length does not match the partition");
  }
  StateVector v;
  v.partition = partition;
  v.segments.resize(partition.worker_count());
  for (std::size_t w = 0; w < partition.worker_count(); ++w) {
    v.segments[w].assign(full.begin() + partition.begin(w), full.begin() + partition.end(w));
  }
  return v;
}

std::vector<Complex> StateVector::gather() const {
  std::vector<Complex> full;
  full.reserve(dim());
  for (const auto& seg : segments) full.insert(full.end(), seg.begin(), seg.end());
  return full;
}

std::vector<Complex> vec_density(const std::vector<Complex>& rho_row_major, std::size_t n) {
  if (rho_row_major.size() != n * n) throw std::invalid_argument("density matrix size mismatch");
  std::vector<Complex> out(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out[n * j + i] = rho_row_major[n * i + j];
  }
  return out;
}

std::vector<Complex> unvec_density(const std::vector<Complex>& rho_tilde, std::size_t n) {
  if (rho_tilde.size() != n * n) throw std::invalid_argument("vectorized state size mismatch");
  std::vector<Complex> out(n * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out[n * i + j] = rho_tilde[n * j + i];
  }
  return out;
}

}  // namespace qsw
