#include "qsw/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

namespace qsw {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void validate_adjacency(const SparseMatrix& adjacency) {
  if (adjacency.rows() != adjacency.cols()) {
    throw std::invalid_argument("adjacency matrix must be square");
  }
  for (std::size_t i = 0; i < adjacency.rows(); ++i) {
    auto cols = adjacency.row_cols(i);
    auto vals = adjacency.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] == i) {
        throw std::invalid_argument("adjacency has a diagonal entry at vertex " +
                                    std::to_string(i) + " (self-loops are not allowed)");
      }
      if (vals[k].imag() != 0.0) {
        throw std::invalid_argument("adjacency weights must be real");
      }
      if (!(vals[k].real() > 0.0)) {
        throw std::invalid_argument("adjacency weights must be strictly positive");
      }
    }
  }
}

}  // namespace

WeightedDigraph WeightedDigraph::from_adjacency(SparseMatrix adjacency) {
  validate_adjacency(adjacency);
  WeightedDigraph g;
  g.n_base_ = adjacency.rows();
  g.adjacency_ = std::move(adjacency);
  return g;
}

WeightedDigraph WeightedDigraph::load_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FileFormatError("empty Matrix Market stream");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") {
    throw FileFormatError("missing %%MatrixMarket banner");
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate") {
    throw FileFormatError("only `matrix coordinate` Matrix Market data is supported");
  }
  if (field != "real" && field != "integer") {
    throw FileFormatError("adjacency input requires a real or integer field, got `" + field +
                          "`");
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw FileFormatError("unsupported symmetry `" + symmetry + "`");
  }
  const bool symmetric = symmetry == "symmetric";

  // Skip comments, then read the size line.
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '%') continue;
    bool blank = std::all_of(line.begin(), line.end(),
                             [](unsigned char c) { return std::isspace(c); });
    if (!blank) break;
  }
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, declared = -1;
  if (!(size_line >> rows >> cols >> declared) || rows < 0 || cols < 0 || declared < 0) {
    throw FileFormatError("malformed Matrix Market size line: `" + line + "`");
  }
  if (rows != cols) throw FileFormatError("adjacency matrix must be square");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(declared) * (symmetric ? 2 : 1));
  long long seen = 0;
  while (seen < declared) {
    if (!std::getline(in, line)) throw FileFormatError("unexpected end of Matrix Market data");
    if (!line.empty() && line[0] == '%') continue;
    bool blank = std::all_of(line.begin(), line.end(),
                             [](unsigned char c) { return std::isspace(c); });
    if (blank) continue;
    std::istringstream entry(line);
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(entry >> i >> j >> w)) {
      throw FileFormatError("malformed Matrix Market entry: `" + line + "`");
    }
    if (i < 1 || i > rows || j < 1 || j > cols) {
      throw FileFormatError("Matrix Market index out of bounds: (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
    }
    if (i == j) {
      throw std::invalid_argument("diagonal entry at vertex " + std::to_string(i) +
                                  " violates the simple-graph requirement");
    }
    if (!(w > 0.0)) {
      throw std::invalid_argument("non-positive weight " + std::to_string(w) + " at (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    std::size_t r = static_cast<std::size_t>(i - 1);
    std::size_t c = static_cast<std::size_t>(j - 1);
    entries.push_back({r, c, Complex{w, 0.0}});
    if (symmetric) entries.push_back({c, r, Complex{w, 0.0}});
    ++seen;
  }

  SparseMatrix adjacency;
  try {
    adjacency = SparseMatrix::from_triplets(static_cast<std::size_t>(rows),
                                            static_cast<std::size_t>(cols), std::move(entries),
                                            DuplicatePolicy::Error);
  } catch (const std::invalid_argument& e) {
    throw FileFormatError(std::string("duplicate coordinate: ") + e.what());
  }
  return from_adjacency(std::move(adjacency));
}

void WeightedDigraph::save_matrix_market(std::ostream& out) const {
  const SparseMatrix t = adjacency_.transpose();  // row-major over t = (column, row) order
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << adjacency_.rows() << " " << adjacency_.cols() << " " << adjacency_.nnz() << "\n";
  out.precision(17);
  for (std::size_t j = 0; j < t.rows(); ++j) {
    auto rows = t.row_cols(j);
    auto vals = t.row_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << rows[k] + 1 << " " << j + 1 << " " << vals[k].real() << "\n";
    }
  }
}

WeightedDigraph symmetrize(const WeightedDigraph& g) {
  const SparseMatrix& a = g.adjacency();
  const SparseMatrix t = a.transpose();
  std::vector<Triplet> entries;
  entries.reserve(2 * a.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ac = a.row_cols(i); auto av = a.row_values(i);
    auto tc = t.row_cols(i); auto tv = t.row_values(i);
    std::size_t p = 0, q = 0;
    while (p < ac.size() || q < tc.size()) {
      if (q == tc.size() || (p < ac.size() && ac[p] < tc[q])) {
        entries.push_back({i, ac[p], av[p]}); ++p;
      } else if (p == ac.size() || tc[q] < ac[p]) {
        entries.push_back({i, tc[q], tv[q]}); ++q;
      } else {
        entries.push_back({i, ac[p], std::max(av[p].real(), tv[q].real())}); ++p; ++q;
      }
    }
  }
  return WeightedDigraph::from_adjacency(
      SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(entries)));
}

DegreeVector out_degrees(const WeightedDigraph& g) {
  const SparseMatrix& a = g.adjacency();
  DegreeVector deg(a.cols(), 0.0);
  auto cols = a.col_indices();
  auto vals = a.values();
  for (std::size_t k = 0; k < a.nnz(); ++k) deg[cols[k]] += vals[k].real();
  return deg;
}

DegreeVector in_degrees(const WeightedDigraph& g) {
  const SparseMatrix& a = g.adjacency();
  DegreeVector deg(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const Complex& v : a.row_values(i)) deg[i] += v.real();
  }
  return deg;
}

SparseMatrix generator_matrix(double gamma, const SparseMatrix& adjacency) {
  if (!(gamma > 0.0)) throw std::invalid_argument("transition rate gamma must be positive");
  std::vector<double> col_sums(adjacency.cols(), 0.0);
  auto cols = adjacency.col_indices();
  auto vals = adjacency.values();
  for (std::size_t k = 0; k < adjacency.nnz(); ++k) col_sums[cols[k]] += vals[k].real();

  std::vector<Triplet> entries;
  entries.reserve(adjacency.nnz() + adjacency.rows());
  for (std::size_t i = 0; i < adjacency.rows(); ++i) {
    auto rc = adjacency.row_cols(i);
    auto rv = adjacency.row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) {
      entries.push_back({i, rc[k], Complex{-gamma * rv[k].real(), 0.0}});
    }
    if (col_sums[i] != 0.0) entries.push_back({i, i, Complex{gamma * col_sums[i], 0.0}});
  }
  return SparseMatrix::from_triplets(adjacency.rows(), adjacency.cols(), std::move(entries));
}

SparseMatrix generator_matrix(double gamma, const WeightedDigraph& g) {
  return generator_matrix(gamma, g.adjacency());
}

SparseMatrix markov_chain_matrix(const WeightedDigraph& g) {
  const SparseMatrix& a = g.adjacency();
  DegreeVector deg = out_degrees(g);
  std::vector<Triplet> entries;
  entries.reserve(a.nnz());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t c : a.row_cols(i)) {
      entries.push_back({i, c, Complex{1.0 / deg[c], 0.0}});
    }
  }
  return SparseMatrix::from_triplets(a.rows(), a.cols(), std::move(entries));
}

WeightedDigraph augment(const WeightedDigraph& g, const std::vector<SourceArc>& sources,
                        const std::vector<SinkArc>& sinks) {
  if (!g.sources().empty() || !g.sinks().empty()) {
    throw std::invalid_argument("augment() requires a non-augmented base graph");
  }
  const std::size_t n = g.vertex_count();
  std::set<std::size_t> source_targets, sink_origins;

  for (const SourceArc& s : sources) {
    if (s.target >= g.base_vertex_count()) {
      throw std::out_of_range("source target vertex " + std::to_string(s.target) +
                              " out of range");
    }
    if (!(s.rate > 0.0)) throw std::invalid_argument("source rate must be strictly positive");
    if (!source_targets.insert(s.target).second) {
      throw std::invalid_argument("duplicate source attachment at vertex " +
                                  std::to_string(s.target));
    }
  }
  for (const SinkArc& s : sinks) {
    if (s.origin >= g.base_vertex_count()) {
      throw std::out_of_range("sink origin vertex " + std::to_string(s.origin) +
                              " out of range");
    }
    if (!(s.rate > 0.0)) throw std::invalid_argument("sink rate must be strictly positive");
    if (!sink_origins.insert(s.origin).second) {
      throw std::invalid_argument("duplicate sink attachment at vertex " +
                                  std::to_string(s.origin));
    }
  }

  const std::size_t total = n + sources.size() + sinks.size();
  std::vector<Triplet> entries;
  entries.reserve(g.adjacency().nnz() + sources.size() + sinks.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto rc = g.adjacency().row_cols(i);
    auto rv = g.adjacency().row_values(i);
    for (std::size_t k = 0; k < rc.size(); ++k) entries.push_back({i, rc[k], rv[k]});
  }
  // Sources first, then sinks, each appended in argument order.
  for (std::size_t k = 0; k < sources.size(); ++k) {
    entries.push_back({sources[k].target, n + k, Complex{sources[k].rate, 0.0}});
  }
  for (std::size_t k = 0; k < sinks.size(); ++k) {
    entries.push_back({n + sources.size() + k, sinks[k].origin, Complex{sinks[k].rate, 0.0}});
  }

  WeightedDigraph out;
  out.adjacency_ = SparseMatrix::from_triplets(total, total, std::move(entries));
  out.n_base_ = g.base_vertex_count();
  out.sources_ = sources;
  out.sinks_ = sinks;
  return out;
}

}  // namespace qsw
