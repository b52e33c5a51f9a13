// Benchmarks for the contraction engine, the exact scalar field and the
// quadratic Gauss-sum evaluator.

#include <benchmark/benchmark.h>

#include <random>

#include "holant/affine.hpp"
#include "holant/eval.hpp"
#include "holant/signature.hpp"

using namespace holant;

namespace {

Scalar rnd_scalar(std::mt19937& eng) {
  std::uniform_int_distribution<int> d(-3, 3);
  Scalar s(d(eng));
  if (d(eng) > 1) s += Scalar(d(eng)) * Scalar::zeta(std::uniform_int_distribution<int>(1, 23)(eng));
  return s;
}

// cycle of binary signatures with chords every `stride` vertices
SignatureGrid ring_grid(int n, unsigned seed) {
  std::mt19937 eng(seed);
  SignatureGrid g;
  for (int v = 0; v < n; ++v) {
    std::vector<Scalar> vals;
    for (int i = 0; i < 8; ++i) vals.push_back(rnd_scalar(eng));
    g.vertices.push_back(Signature(3, vals));
  }
  for (int v = 0; v < n; ++v) g.edges.push_back({{v, 0}, {(v + 1) % n, 1}});
  for (int v = 0; v < n; v += 2) g.edges.push_back({{v, 2}, {(v + 1) % n, 2}});
  // leftover slots for odd n handled by the generator being even-only
  return g;
}

void bench_contract(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = ring_grid(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(holant_contract(g));
}

void bench_bruteforce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto g = ring_grid(n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(holant_bruteforce(g));
}

void bench_scalar_mul(benchmark::State& state) {
  std::mt19937 eng(11);
  const Scalar a = rnd_scalar(eng) + Scalar::zeta(5);
  const Scalar b = rnd_scalar(eng) + Scalar::zeta(7);
  for (auto _ : state) {
    Scalar c = a * b;
    benchmark::DoNotOptimize(c);
  }
}

void bench_gauss_sum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 eng(13);
  std::uniform_int_distribution<int> bit(0, 1), lin(0, 3);
  PhaseSystem sys(n);
  for (int j = 0; j < n; ++j) {
    sys.add_linear(j, lin(eng));
    for (int k = j + 1; k < n; ++k)
      if (bit(eng)) sys.add_cross(j, k);
  }
  for (auto _ : state) benchmark::DoNotOptimize(sys.evaluate());
}

}  // namespace

BENCHMARK(bench_contract)->Arg(6)->Arg(10)->Arg(14);
BENCHMARK(bench_bruteforce)->Arg(6)->Arg(10);
BENCHMARK(bench_scalar_mul);
BENCHMARK(bench_gauss_sum)->Arg(16)->Arg(32)->Arg(48);

BENCHMARK_MAIN();
