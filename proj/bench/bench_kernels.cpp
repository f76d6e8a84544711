// Serial reference loops against their OpenMP versions on a synthetic
// instance with about 51k rank-5 edges (n = 2000, p = 1e-10, q = 2p).
//
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include <vector>

#include "hbc/graph.hpp"
#include "hbc/kernels.hpp"
#include "hbc/reductions.hpp"
#include "hbc/rng.hpp"
#include "hbc/synth.hpp"

namespace {

using namespace hbc;

struct Fixture {
  Hypergraph h;
  Graph g;
  VertexVector f;
  std::vector<double> big_w, big_f, big_g;

  Fixture() : h(generate({2000, 5, 1e-10, 2e-10, 0}).hypergraph), g(clique_reduce(h)) {
    Rng rng(1);
    f.resize(h.num_vertices());
    for (double& x : f) x = 2.0 * rng.uniform() - 1.0;
    const std::size_t m = 1 << 22;
    big_w.resize(m);
    big_f.resize(m);
    big_g.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      big_w[i] = 1.0 + rng.uniform();
      big_f[i] = rng.uniform() - 0.5;
      big_g[i] = rng.uniform() - 0.5;
    }
  }
};

const Fixture& fixture() {
  static const Fixture fx;
  return fx;
}

template <bool Parallel>
void BM_DiscrepancyEnergy(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::parallel::discrepancy_energy(fx.h, fx.f)
                                      : kernels::serial::discrepancy_energy(fx.h, fx.f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.h.num_edges()));
}

template <bool Parallel>
void BM_EdgeExtremes(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    auto ex = Parallel ? kernels::parallel::edge_extremes(fx.h, fx.f)
                       : kernels::serial::edge_extremes(fx.h, fx.f);
    benchmark::DoNotOptimize(ex.max_value.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.h.num_edges()));
}

template <bool Parallel>
void BM_EvenSplitRate(benchmark::State& state) {
  const auto& fx = fixture();
  VertexVector r(fx.h.num_vertices());
  for (auto _ : state) {
    if (Parallel) {
      kernels::parallel::even_split_rate(fx.h, fx.f, r);
    } else {
      kernels::serial::even_split_rate(fx.h, fx.f, r);
    }
    benchmark::DoNotOptimize(r.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.h.num_edges()));
}

template <bool Parallel>
void BM_ApplyNormalized(benchmark::State& state) {
  const auto& fx = fixture();
  VertexVector out(fx.g.num_vertices());
  for (auto _ : state) {
    if (Parallel) {
      kernels::parallel::apply_normalized(fx.g, fx.f, out);
    } else {
      kernels::serial::apply_normalized(fx.g, fx.f, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_WeightedDot(benchmark::State& state) {
  const auto& fx = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::parallel::weighted_dot(fx.big_w, fx.big_f, fx.big_g)
                                      : kernels::serial::weighted_dot(fx.big_w, fx.big_f, fx.big_g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fx.big_w.size()));
}

BENCHMARK(BM_DiscrepancyEnergy<false>)->Name("discrepancy_energy/serial");
BENCHMARK(BM_DiscrepancyEnergy<true>)->Name("discrepancy_energy/parallel")->UseRealTime();
BENCHMARK(BM_EdgeExtremes<false>)->Name("edge_extremes/serial");
BENCHMARK(BM_EdgeExtremes<true>)->Name("edge_extremes/parallel")->UseRealTime();
BENCHMARK(BM_EvenSplitRate<false>)->Name("even_split_rate/serial");
BENCHMARK(BM_EvenSplitRate<true>)->Name("even_split_rate/parallel")->UseRealTime();
BENCHMARK(BM_ApplyNormalized<false>)->Name("apply_normalized/serial");
BENCHMARK(BM_ApplyNormalized<true>)->Name("apply_normalized/parallel")->UseRealTime();
BENCHMARK(BM_WeightedDot<false>)->Name("weighted_dot/serial");
BENCHMARK(BM_WeightedDot<true>)->Name("weighted_dot/parallel")->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
