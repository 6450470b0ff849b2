#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "arbor/corpus.hpp"

using namespace arbor;

namespace {

const std::vector<TreeInstance>& trees() {
  static const auto in = [] {
    std::mt19937_64 rng(7);
    std::vector<TreeInstance> v;
    for (int i = 0; i < 32; ++i) v.push_back(random_tree_instance(rng));
    return v;
  }();
  return in;
}

const std::vector<HalflineInstance>& halflines() {
  static const auto in = [] {
    std::mt19937_64 rng(11);
    std::vector<HalflineInstance> v;
    for (int i = 0; i < 64; ++i) v.push_back(random_halfline_instance(rng));
    return v;
  }();
  return in;
}

void BM_TreeCounts(benchmark::State& st) {
  const bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(batch_tree_counts(trees(), parallel));
  st.SetItemsProcessed(st.iterations() * trees().size());
}

void BM_HalflineCounts(benchmark::State& st) {
  const bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(batch_halfline_counts(halflines(), parallel));
  st.SetItemsProcessed(st.iterations() * halflines().size());
}

void BM_TreeMoments(benchmark::State& st) {
  const bool parallel = st.range(0) != 0;
  for (auto _ : st) benchmark::DoNotOptimize(batch_tree_moments(trees(), 1.0, parallel));
  st.SetItemsProcessed(st.iterations() * trees().size());
}

}  // namespace

// arg 0 = serial reference, 1 = OpenMP
BENCHMARK(BM_TreeCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HalflineCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeMoments)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
