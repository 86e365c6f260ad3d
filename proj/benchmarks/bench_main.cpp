#include <benchmark/benchmark.h>

#include "permzhu/delta.hpp"
#include "permzhu/fermion.hpp"
#include "permzhu/zhu.hpp"

namespace {

using namespace permzhu;

void BM_CycloMul(benchmark::State& state) {
  CycloScalar a = CycloScalar::root_of_unity(12, 1) + CycloScalar(Rational(3, 7));
  CycloScalar b = CycloScalar::root_of_unity(12, 5) - CycloScalar(Rational(2, 5));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a * b);
  }
}
BENCHMARK(BM_CycloMul);

void BM_CycloInverse(benchmark::State& state) {
  CycloScalar a = CycloScalar::root_of_unity(12, 1) + CycloScalar(Rational(3, 7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.inverse());
  }
}
BENCHMARK(BM_CycloInverse);

void BM_SqrtOfInteger(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(CycloScalar::sqrt_of_integer(static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_SqrtOfInteger)->Arg(2)->Arg(5);

void BM_NthProduct(benchmark::State& state) {
  // fresh algebra per iteration so the memo cache does not absorb the work
  for (auto _ : state) {
    FreeFermion algebra;
    State prod = algebra.nth_product(algebra.conformal_vector(), 1,
                                     State::of(fermion_monomial({3, 2, 1})));
    benchmark::DoNotOptimize(prod);
  }
}
BENCHMARK(BM_NthProduct);

void BM_SolveACoeffs(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_a_coeffs(3, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_SolveACoeffs)->Arg(8)->Arg(16);

void BM_BuildOspanK2(benchmark::State& state) {
  const Weight wgen = Weight::from_halves(static_cast<int>(state.range(0)));
  const Weight wstore = Weight::from_halves(static_cast<int>(state.range(0)) + 2);
  for (auto _ : state) {
    FreeFermion algebra;
    TensorAlgebra tensor(algebra, 2);
    Twist twist(tensor, TwistSpec{{2}, false});
    benchmark::DoNotOptimize(build_ospan(twist, wgen, wstore, 1));
  }
}
BENCHMARK(BM_BuildOspanK2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
