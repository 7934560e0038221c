#include "qsw/walk.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace qsw {

Complex DensityMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim; ++i) t += at(i, i);
  return t;
}

double DensityMatrix::hermiticity_error() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = at(i, i).real();
  return p;
}

double DensityMatrix::max_coherence() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i != j) worst = std::max(worst, std::abs(at(i, j)));
    }
  }
  return worst;
}

WalkSystem WalkSystem::lqsw(double omega, SparseMatrix h, SparseMatrix m_l,
                            std::vector<SourceArc> sources, std::vector<SinkArc> sinks,
                            std::size_t n_workers) {
  WalkSystem w;
  w.ops_.kind = WalkKind::Local;
  w.ops_.omega = omega;
  w.dim_ = h.rows();
  w.ops_.hamiltonian = std::move(h);
  w.ops_.lindblads.push_back(std::move(m_l));
  w.sources_ = std::move(sources);
  w.sinks_ = std::move(sinks);
  w.n_workers_ = n_workers;
  w.rebuild();
  return w;
}

WalkSystem WalkSystem::gqsw(double omega, SparseMatrix h, std::vector<SparseMatrix> lindblads,
                            std::optional<SparseMatrix> h_rot,
                            std::optional<VertexSubspaces> vsets, std::size_t n_workers) {
  if (h_rot.has_value() != vsets.has_value()) {
    throw std::invalid_argument(
        "non-moralising walks need both the rotating Hamiltonian and the vertex subspaces");
  }
  WalkSystem w;
  w.ops_.kind = h_rot ? WalkKind::NonMoralisingGlobal : WalkKind::Global;
  w.ops_.omega = omega;
  w.dim_ = h.rows();
  w.ops_.hamiltonian = std::move(h);
  w.ops_.lindblads = std::move(lindblads);
  w.ops_.rotating_hamiltonian = std::move(h_rot);
  w.ops_.subspaces = std::move(vsets);
  if (w.ops_.subspaces && w.ops_.subspaces->total_dim() != w.dim_) {
    throw std::invalid_argument("vertex subspaces do not match the operator dimension");
  }
  w.n_workers_ = n_workers;
  w.rebuild();
  return w;
}

void WalkSystem::rebuild() {
  if (ops_.kind == WalkKind::Local) {
    liouvillian_ =
        build_local(ops_.omega, ops_.hamiltonian, ops_.lindblads.front(), sources_, sinks_,
                    n_workers_);
  } else {
    liouvillian_ = build_global(ops_.omega, ops_.hamiltonian, ops_.lindblads,
                                ops_.rotating_hamiltonian, n_workers_);
  }
}

std::size_t WalkSystem::measured_vertex_count() const {
  return ops_.subspaces ? ops_.subspaces->vertex_count() : dim_;
}

void WalkSystem::set_initial(std::vector<Complex> rho_row_major) {
  initial_ = StateVector::scatter(vec_density(rho_row_major, dim_), liouvillian_.partition());
  result_.reset();
}

void WalkSystem::initial_state(const std::vector<double>& probabilities) {
  std::vector<double> p = probabilities;
  if (ops_.kind == WalkKind::NonMoralisingGlobal &&
      p.size() == ops_.subspaces->vertex_count()) {
    p = nm_rho_map(p, *ops_.subspaces);
  } else if (ops_.kind == WalkKind::Local && p.size() < dim_ &&
             p.size() == dim_ - sources_.size() - sinks_.size()) {
    p.resize(dim_, 0.0);  // augmented vertices start unoccupied
  }
  if (p.size() != dim_) {
    throw std::invalid_argument("probability vector length " +
                                std::to_string(probabilities.size()) +
                                " does not match the walk dimension");
  }
  double total = 0.0;
  for (double x : p) {
    if (x < 0.0) throw std::invalid_argument("probabilities must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("probability vector is not normalized");
  }
  std::vector<Complex> rho(dim_ * dim_, Complex{});
  for (std::size_t i = 0; i < dim_; ++i) rho[i * dim_ + i] = Complex{p[i], 0.0};
  set_initial(std::move(rho));
}

void WalkSystem::initial_state(const DensityMatrix& rho) {
  if (rho.dim != dim_ || rho.entries.size() != dim_ * dim_) {
    throw std::invalid_argument("density matrix dimension does not match the walk");
  }
  if (std::abs(rho.trace() - Complex{1.0, 0.0}) > 1e-12) {
    throw std::invalid_argument("density matrix must have unit trace");
  }
  if (rho.hermiticity_error() > 1e-12) {
    throw std::invalid_argument("density matrix must be Hermitian");
  }
  set_initial(rho.entries);
}

void WalkSystem::set_omega(double omega) {
  if (!(omega >= 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must be in [0, 1]");
  ops_.omega = omega;
  rebuild();
}

void WalkSystem::step(double t, const TaylorParameters& params) {
  if (!initial_) throw std::logic_error("no initial state: call initial_state first");
  result_ = qsw::step(liouvillian_, *initial_, t, params);
}

SeriesResult WalkSystem::series(double t1, double tq, std::size_t steps,
                                const TaylorParameters& params) {
  if (!initial_) throw std::logic_error("no initial state: call initial_state first");
  SeriesResult out = qsw::series(liouvillian_, *initial_, t1, tq, steps, params);
  result_ = out.states.back();
  return out;
}

const StateVector& WalkSystem::current() const {
  if (result_) return *result_;
  if (initial_) return *initial_;
  throw std::logic_error("no state available: call initial_state first");
}

DensityMatrix WalkSystem::gather_result() const {
  DensityMatrix rho;
  rho.dim = dim_;
  rho.entries = unvec_density(current().gather(), dim_);
  return rho;
}

std::vector<double> WalkSystem::gather_populations() const {
  return populations_of(current());
}

std::vector<double> WalkSystem::populations_of(const StateVector& state) const {
  const std::vector<Complex> full = state.gather();
  if (full.size() != dim_ * dim_) {
    throw std::invalid_argument("state does not belong to this walk");
  }
  std::vector<double> diag(dim_);
  for (std::size_t i = 0; i < dim_; ++i) diag[i] = full[i * dim_ + i].real();
  if (ops_.subspaces) return nm_measure(diag, *ops_.subspaces);
  return diag;
}

double expected_survival_time(std::span<const double> times,
                              std::span<const double> sink_populations) {
  if (times.size() != sink_populations.size()) {
    throw std::invalid_argument("times and populations must have equal length");
  }
  if (times.size() < 3) {
    throw std::invalid_argument("expected survival time needs at least 3 points");
  }
  const std::size_t intervals = times.size() - 1;
  if (intervals % 2 != 0) {
    throw std::invalid_argument("Simpson integration needs an even number of intervals");
  }
  const double h = (times.back() - times.front()) / static_cast<double>(intervals);
  const double tail = 1.0 - sink_populations.back();
  if (tail > 1e-4) {
    std::cerr << "qsw: expected_survival_time: sink population at t_q is " << 1.0 - tail
              << "; the integral is truncated, not extrapolated\n";
  }
  double sum = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double f = 1.0 - sink_populations[i];
    const double coef = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += coef * f;
  }
  return sum * h / 3.0;
}

}  // namespace qsw
