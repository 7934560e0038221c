#pragma once

#include <vector>

#include "qsw/partition.hpp"
#include "qsw/sparse.hpp"

namespace qsw {

/// Distributed vectorized density matrix: vec(rho) split into per-worker
/// segments matching a row partition. The vec mapping is column-major,
/// element k of the vector holds rho(i, j) with k = dim*j + i.
struct StateVector {
  RowPartition partition;
  std::vector<std::vector<Complex>> segments;

  std::size_t dim() const { return partition.dim(); }

  static StateVector scatter(const std::vector<Complex>& full, const RowPartition& partition);
  std::vector<Complex> gather() const;
};

/// Column-major stacking of a row-major dense n x n matrix.
std::vector<Complex> vec_density(const std::vector<Complex>& rho_row_major, std::size_t n);

/// Inverse of vec_density.
std::vector<Complex> unvec_density(const std::vector<Complex>& rho_tilde, std::size_t n);

}  // namespace qsw
