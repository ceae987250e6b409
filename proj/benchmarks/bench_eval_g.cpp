#include <benchmark/benchmark.h>

#include "dnnbound/apg.hpp"
#include "dnnbound/bracket.hpp"
#include "dnnbound/synthetic.hpp"

using namespace dnnbound;

namespace {

void BM_EvalG(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const Eigen::MatrixXd f = random_bqop_matrix(r, 7);
  const LagrangianCop cop = lagrangian(build_dnn(build_bqop(f, true)), 10000.0);
  // probe just above the feasible-objective start
  const double y = *cop.source.feasible_objective + 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_g(cop, y, ApgParams{}));
  }
}

void BM_SecantSolve(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const Eigen::MatrixXd f = random_bqop_matrix(r, 11);
  const LagrangianCop cop = lagrangian(build_dnn(build_bqop(f, true)), 10000.0);
  for (auto _ : state) {
    BracketParams params;
    benchmark::DoNotOptimize(secant_solve(cop, params));
  }
}

}  // namespace

BENCHMARK(BM_EvalG)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SecantSolve)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
