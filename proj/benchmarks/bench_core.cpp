#include <benchmark/benchmark.h>

#include "fibcf/exact.hpp"
#include "fibcf/extremal.hpp"
#include "fibcf/fibseq.hpp"
#include "fibcf/mat2.hpp"
#include "fibcf/words.hpp"

#include <random>

using namespace fibcf;

namespace {

// deep star-product chains: entries grow doubly exponentially with depth
void BM_sequence_depth(benchmark::State& state) {
  const std::size_t depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    FibMatrixSeq seq(Mat2Z(2, 2, 1, 2), Mat2Z(4, 2, 3, 2));
    benchmark::DoNotOptimize(seq.term(depth));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_sequence_depth)->Arg(10)->Arg(16)->Arg(22)->Arg(26);

void BM_word_to_matrix(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> letter(1, 9);
  IntWord w;
  for (long i = 0; i < state.range(0); ++i) w.push_back(Integer(letter(rng)));
  for (auto _ : state) benchmark::DoNotOptimize(word_to_matrix(w));
}
BENCHMARK(BM_word_to_matrix)->Arg(64)->Arg(256)->Arg(1024);

void BM_factor_gl2(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> letter(1, 9);
  IntWord w;
  for (long i = 0; i < state.range(0); ++i) w.push_back(Integer(letter(rng)));
  Mat2Z m = word_to_matrix(w);
  for (auto _ : state) benchmark::DoNotOptimize(factor_gl2(m));
}
BENCHMARK(BM_factor_gl2)->Arg(16)->Arg(64)->Arg(256);

void BM_certified_quotients(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ExtremalNumber x(FibMatrixSeq(Mat2Z(2, 2, 1, 2), Mat2Z(4, 2, 3, 2)));
    benchmark::DoNotOptimize(x.partial_quotients(n));
  }
}
BENCHMARK(BM_certified_quotients)->Arg(50)->Arg(200);

void BM_interval_extract(benchmark::State& state) {
  ExtremalNumber x(FibMatrixSeq(Mat2Z(2, 2, 1, 2), Mat2Z(4, 2, 3, 2)));
  RationalInterval I = x.enclosure(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(interval_cf_extract(I, 500));
}
BENCHMARK(BM_interval_extract)->Arg(12)->Arg(16)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
