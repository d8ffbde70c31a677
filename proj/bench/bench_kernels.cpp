// Partitioned kernels against their serial references.

#include <benchmark/benchmark.h>

#include "cotwist/curves.hpp"
#include "cotwist/h1.hpp"

namespace {

using namespace cotwist;

const h1::TwistedSetting& setting_108() {
  static const auto g = groups::group_108().group;
  static const h1::TwistedSetting st(g, groups::GroupAut::identity(g));
  return st;
}

void BM_PairSearchSerial(benchmark::State& state) {
  const auto& st = setting_108();
  for (auto _ : state) benchmark::DoNotOptimize(h1::find_pair_witnesses_serial(st, 3, 2));
}
BENCHMARK(BM_PairSearchSerial)->Unit(benchmark::kMillisecond);

void BM_PairSearch(benchmark::State& state) {
  const auto& st = setting_108();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(h1::find_pair_witnesses(st, 3, 2, 0, workers));
}
BENCHMARK(BM_PairSearch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

struct F5Pair {
  curves::CurveModel c, d;
  ff::FieldPtr f25;
};

const F5Pair& f5_pair() {
  static const F5Pair p = [] {
    const auto f5 = ff::build_field(5, 1);
    return F5Pair{curves::CurveModel::superelliptic(ff::Poly(f5, {1, 4, 0, 0, 0, 1})),
                  curves::CurveModel::superelliptic(ff::Poly(f5, {2, 4, 0, 0, 0, 1})), ff::build_field(5, 2)};
  }();
  return p;
}

void BM_HyperellipticSearchSerial(benchmark::State& state) {
  const auto& p = f5_pair();
  for (auto _ : state) benchmark::DoNotOptimize(curves::hyperelliptic_search_serial(p.c, p.d, p.f25));
}
BENCHMARK(BM_HyperellipticSearchSerial)->Unit(benchmark::kMillisecond);

void BM_HyperellipticSearch(benchmark::State& state) {
  const auto& p = f5_pair();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(curves::hyperelliptic_search(p.c, p.d, p.f25, workers));
}
BENCHMARK(BM_HyperellipticSearch)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CountPointsNaive(benchmark::State& state) {
  const auto& p = f5_pair();
  for (auto _ : state) benchmark::DoNotOptimize(curves::count_points_naive(p.c, 3));
}
BENCHMARK(BM_CountPointsNaive)->Unit(benchmark::kMicrosecond);

void BM_CountPoints(benchmark::State& state) {
  const auto& p = f5_pair();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(curves::count_points(p.c, 3, workers));
}
BENCHMARK(BM_CountPoints)->Arg(1)->Arg(4)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
