#include <random>

#include <benchmark/benchmark.h>

#include "dnnbound/cones.hpp"

using namespace dnnbound;

namespace {

SymMatrix random_sym(int d, std::mt19937_64& rng) {
  SymMatrix m(d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      m.set(i, j, static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0);
    }
  }
  return m;
}

void BM_ProjectPsd(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const SymMatrix a = random_sym(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_psd(a));
  }
}

void BM_ProjectK2(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  const SymMatrix a = random_sym(d, rng);
  std::vector<int> bin;
  for (int i = 1; i < d; ++i) bin.push_back(i);
  const ConeStructure s(d - 1, bin, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_k2(a, s));
  }
}

void BM_DykstraIntersection(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  const SymMatrix a = random_sym(d, rng);
  const ConeStructure s(d - 1, {1}, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_intersection_dykstra(a, s, 1e-8));
  }
}

}  // namespace

BENCHMARK(BM_ProjectPsd)->Arg(17)->Arg(65)->Arg(201)->Arg(401);
BENCHMARK(BM_ProjectK2)->Arg(17)->Arg(65)->Arg(201)->Arg(401);
BENCHMARK(BM_DykstraIntersection)->Arg(9)->Arg(17);
