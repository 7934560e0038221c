#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qsw/expm.hpp"
#include "qsw/graph.hpp"
#include "qsw/liouvillian.hpp"
#include "qsw/operators.hpp"
#include "qsw/walk.hpp"

namespace {

qsw::WeightedDigraph line_digraph(std::size_t n) {
  std::vector<qsw::Triplet> arcs;
  for (std::size_t j = 0; j + 1 < n; ++j) arcs.push_back({j + 1, j, {1.0, 0.0}});
  return qsw::WeightedDigraph::from_adjacency(
      qsw::SparseMatrix::from_triplets(n, n, std::move(arcs)));
}

qsw::DistributedLiouvillian make_liouvillian(std::size_t n, std::size_t workers) {
  auto g = line_digraph(n);
  auto h = generator_matrix(1.0, symmetrize(g));
  return build_local(0.5, h, qsw::local_lindblad(generator_matrix(1.0, g)), {}, {}, workers);
}

qsw::StateVector mixed_state(const qsw::DistributedLiouvillian& l, std::size_t n) {
  std::vector<qsw::Complex> rho(n * n, qsw::Complex{});
  for (std::size_t i = 0; i < n; ++i) rho[i * n + i] = 1.0 / static_cast<double>(n);
  return qsw::StateVector::scatter(qsw::vec_density(rho, n), l.partition());
}

void BM_BuildLocal(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto g = line_digraph(n);
  auto h = generator_matrix(1.0, symmetrize(g));
  auto ml = qsw::local_lindblad(generator_matrix(1.0, g));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_local(0.5, h, ml, {}, {}, 1));
  }
  state.SetComplexityN(static_cast<benchmark::ComplexityN>(n));
}
BENCHMARK(BM_BuildLocal)->Arg(8)->Arg(16)->Arg(32)->Complexity();

void BM_Spmv(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const std::size_t workers = static_cast<std::size_t>(state.range(1));
  auto l = make_liouvillian(n, workers);
  auto x = mixed_state(l, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(spmv(l, x));
  }
}
BENCHMARK(BM_Spmv)->Args({16, 1})->Args({16, 2})->Args({16, 4})->Args({32, 1})->Args({32, 4});

void BM_Step(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto l = make_liouvillian(n, static_cast<std::size_t>(state.range(1)));
  auto x = mixed_state(l, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsw::step(l, x, 10.0));
  }
}
BENCHMARK(BM_Step)->Args({12, 1})->Args({12, 4})->Args({24, 1})->Args({24, 4});

// One series call against repeated steps over the same grid; the series
// timing should stay comparable to a single long step.
void BM_Series(benchmark::State& state) {
  auto l = make_liouvillian(12, 1);
  auto x = mixed_state(l, 12);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qsw::series(l, x, 0.0, 20.0, 40));
  }
}
BENCHMARK(BM_Series);

void BM_RepeatedSteps(benchmark::State& state) {
  auto l = make_liouvillian(12, 1);
  auto x = mixed_state(l, 12);
  for (auto _ : state) {
    for (int k = 1; k <= 40; ++k) {
      benchmark::DoNotOptimize(qsw::step(l, x, 0.5 * k));
    }
  }
}
BENCHMARK(BM_RepeatedSteps);

}  // namespace

BENCHMARK_MAIN();
