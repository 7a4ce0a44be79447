// Micro-benchmarks for the two exact solvers and the three kernelizations on
// deterministic instance families.
#include <benchmark/benchmark.h>

#include "ntst/counting.hpp"
#include "ntst/kernel.hpp"
#include "ntst/matroid.hpp"
#include "ntst/oracle.hpp"
#include "ntst/rng.hpp"

using namespace ntst;

namespace {

// Cycle on n vertices plus a few deterministic chords, k evenly spread marks.
Instance chordedCycle(int n, int chords, int k) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  for (int c = 0; c < chords; ++c) g.addEdge((3 * c + 1) % n, (3 * c + 1 + n / 2) % n);
  std::vector<char> nt(n, 0);
  for (int i = 0; i < k; ++i) nt[(int)((long)i * n / k)] = 1;
  return Instance(std::move(g), std::move(nt), std::nullopt);
}

// Cycle on n vertices with k/2 adjacent marked pairs (interior edges).
Instance pairedCycle(int n, int k) {
  MultiGraph g(n);
  for (int i = 0; i < n; ++i) g.addEdge(i, (i + 1) % n);
  for (int c = 0; c < 3; ++c) g.addEdge((5 * c + 2) % n, (5 * c + 2 + n / 2) % n);
  std::vector<char> nt(n, 0);
  for (int p = 0; p < k / 2; ++p) {
    nt[(4 * p) % n] = 1;
    nt[(4 * p + 1) % n] = 1;
  }
  return Instance(std::move(g), std::move(nt), std::nullopt);
}

Instance randomSparse(int n, int k, uint64_t seed) {
  Rng rng(seed);
  RandomOptions opt;
  opt.minVertices = n;
  opt.maxVertices = n;
  opt.maxExtraEdges = n / 4;
  opt.ntFraction = 1.0;
  opt.maxNt = k;
  return randomInstance(rng, opt);
}

void BM_InclusionExclusionCount(benchmark::State& state) {
  Instance inst = chordedCycle(24, 4, (int)state.range(0));
  for (auto _ : state) {
    WeightCounts counts = countAdmissibleTreesByWeight(inst);
    benchmark::DoNotOptimize(counts);
  }
}

void BM_MatroidSolve(benchmark::State& state) {
  Instance inst = pairedCycle(40, (int)state.range(0));
  for (auto _ : state) {
    SolveResult r = solveByMatroidIntersection(inst);
    benchmark::DoNotOptimize(r);
  }
}

void BM_KernelizeK(benchmark::State& state) {
  Instance inst = randomSparse((int)state.range(0), 6, 91);
  for (auto _ : state) {
    KernelResult kr = kernelizeK(inst);
    benchmark::DoNotOptimize(kr);
  }
}

void BM_KernelizeVC(benchmark::State& state) {
  Instance inst = randomSparse((int)state.range(0), 6, 92);
  for (auto _ : state) {
    KernelResult kr = kernelizeVC(inst);
    benchmark::DoNotOptimize(kr);
  }
}

void BM_KernelizeML(benchmark::State& state) {
  Instance inst = randomSparse((int)state.range(0), 6, 93);
  for (auto _ : state) {
    KernelResult kr = kernelizeML(inst);
    benchmark::DoNotOptimize(kr);
  }
}

}  // namespace

BENCHMARK(BM_InclusionExclusionCount)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK(BM_MatroidSolve)->Arg(4)->Arg(8)->Arg(12);
BENCHMARK(BM_KernelizeK)->Arg(60)->Arg(120);
BENCHMARK(BM_KernelizeVC)->Arg(60)->Arg(120);
BENCHMARK(BM_KernelizeML)->Arg(60)->Arg(120);

BENCHMARK_MAIN();
