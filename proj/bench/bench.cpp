// Serial reference kernels against their OpenMP counterparts.
// Argument 0 runs the reference; k > 0 runs the parallel kernel with k jobs.

#include <benchmark/benchmark.h>

#include "hlat/families.hpp"
#include "hlat/forbidden.hpp"
#include "hlat/lattice.hpp"
#include "hlat/spectra.hpp"

using namespace hlat;

namespace {

// The tree T(1,2,6) has lambda_min just below -2 and every proper subtree
// stays above it, so the witness search has to reach order 10. A disjoint
// clique widens the search space.
IntSymMatrix witness_input() {
  Graph g(10 + 8);
  const std::pair<std::size_t, std::size_t> tree[] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6},
                                                      {6, 7}, {7, 8}, {2, 9}};
  for (auto [u, v] : tree) g.add_edge(u, v);
  for (std::size_t i = 10; i < 18; ++i)
    for (std::size_t j = i + 1; j < 18; ++j) g.add_edge(i, j);
  return g.adjacency();
}

void BM_SubmatrixWitness(benchmark::State& state) {
  const IntSymMatrix m = witness_input();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto w = jobs == 0 ? reference::small_submatrix_witness(m) : small_submatrix_witness(m, 10, jobs);
    benchmark::DoNotOptimize(w);
  }
}

void BM_EnumerateMhat(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto e = jobs == 0 ? reference::enumerate_mhat(5) : enumerate_mhat(5, jobs);
    benchmark::DoNotOptimize(e);
  }
}

void BM_DecomposeE6(benchmark::State& state) {
  const GramLattice b(e6_tilde().adjacency().plus_identity(2));
  DecomposeOptions o;
  o.dimension = 14;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = o.jobs == 0 ? reference::decompose_generic(b, 1, o) : decompose_generic(b, 1, o);
    benchmark::DoNotOptimize(r);
  }
}

void BM_DecomposePetersen(benchmark::State& state) {
  const GramLattice b(petersen_graph().adjacency().plus_identity(2));
  DecomposeOptions o;
  o.dimension = 20;
  o.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto r = o.jobs == 0 ? reference::decompose_generic(b, 1, o) : decompose_generic(b, 1, o);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_SubmatrixWitness)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateMhat)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposeE6)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DecomposePetersen)->Arg(0)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
