// OpenMP kernels against their serial references. Run with e.g.
//   OMP_NUM_THREADS=4 ./bench_kernels

#include <benchmark/benchmark.h>

#include "random.hpp"
#include "symchain/kernels.hpp"

using namespace symchain;

namespace {

std::pair<SparseMatrix, SparseMatrix> operands(std::size_t n) {
  testing::Rng rng(n);
  return {testing::random_matrix(Ring::rationals(), rng, n, n, 0.2),
          testing::random_matrix(Ring::rationals(), rng, n, n, 0.2)};
}

std::vector<SparseMatrix> rank_batch(std::size_t n) {
  testing::Rng rng(n + 1);
  std::vector<SparseMatrix> batch;
  for (int k = 0; k < 32; ++k) batch.push_back(testing::random_matrix(Ring::prime_field(101), rng, n, n, 0.3));
  return batch;
}

void BM_matmul_parallel(benchmark::State& state) {
  auto [a, b] = operands(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::matmul(a, b));
}

void BM_matmul_serial(benchmark::State& state) {
  auto [a, b] = operands(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::matmul(a, b));
}

void BM_batch_rank_parallel(benchmark::State& state) {
  auto batch = rank_batch(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::batch_rank(batch));
}

void BM_batch_rank_serial(benchmark::State& state) {
  auto batch = rank_batch(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(serial::batch_rank(batch));
}

}  // namespace

BENCHMARK(BM_matmul_parallel)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_matmul_serial)->Arg(32)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_rank_parallel)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_rank_serial)->Arg(16)->Arg(48)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
