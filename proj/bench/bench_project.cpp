// Codebook projection: serial reference against the OpenMP kernel.

#include <benchmark/benchmark.h>

#include "rhc/codebook.hpp"
#include "rhc/kernels.hpp"
#include "rhc/random.hpp"

namespace {

using namespace rhc;

struct Fixture {
  Codebook codebook;
  DenseVector residual;
  std::vector<Complex> coeffs;
  DenseVector out;

  Fixture(std::size_t n, std::size_t dim) : residual(dim), coeffs(n), out(dim) {
    Rng rng(1);
    std::vector<DenseVector> entries(n, DenseVector(dim));
    std::vector<std::int64_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<std::int64_t>(i);
      for (auto& z : entries[i]) z = std::polar(1.0, rng.phase());
    }
    codebook = Codebook(labels, entries);
    for (auto& z : residual) z = std::polar(1.0, rng.phase());
  }
};

template <auto Project>
void run(benchmark::State& state) {
  Fixture f(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    Project(f.codebook, f.residual, f.coeffs, f.out);
    benchmark::DoNotOptimize(f.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}

void BM_ProjectReference(benchmark::State& state) { run<kernels::project_reference>(state); }
void BM_ProjectParallel(benchmark::State& state) { run<kernels::project>(state); }

#define RHC_SIZES ->Args({101, 1024})->Args({200, 2048})->Args({105, 10000})
BENCHMARK(BM_ProjectReference) RHC_SIZES;
BENCHMARK(BM_ProjectParallel) RHC_SIZES;

}  // namespace

BENCHMARK_MAIN();
