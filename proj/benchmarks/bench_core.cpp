#include <benchmark/benchmark.h>

#include "dytwist/products.hpp"
#include "dytwist/verify.hpp"

namespace {

using namespace dytwist;

void BM_LogGamma(benchmark::State& state) {
  Complex z{3.7, -12.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::log_gamma(z));
    z += Complex(1e-9, 0.0);
  }
}
BENCHMARK(BM_LogGamma);

// Period ratio grows with the argument: r = 2, 16, 128, 1024.
void BM_LogGamma2(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  const specfun::Periods w{2.0, r};
  for (auto _ : state) benchmark::DoNotOptimize(specfun::log_gamma2({0.9, 0.4}, w));
}
BENCHMARK(BM_LogGamma2)->RangeMultiplier(8)->Range(2, 1024);

void BM_RhoR(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::rho_r(SpectralPoint({0.6, 0.1}), 5.0));
}
BENCHMARK(BM_RhoR);

void BM_YbeCheck(benchmark::State& state) {
  const auto kind = static_cast<rmat::RKind>(state.range(0));
  DeformationParams p;
  p.r = 7.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify::check_ybe(kind, SpectralPoint({1.2, 0.1}), SpectralPoint(0.4),
                                               SpectralPoint({-0.7, -0.3}), p));
  }
  state.SetLabel(std::string(rmat::to_string(kind)));
}
BENCHMARK(BM_YbeCheck)->DenseRange(0, 3);

void BM_RhoFProduct(benchmark::State& state) {
  DeformationParams p;
  p.r = 5.0;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(products::rho_F_product(SpectralPoint({1.0, 0.3}), p, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_RhoFProduct)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

void BM_SuiteAll(benchmark::State& state) {
  verify::SampleSpec spec;
  spec.count = 4;
  const std::vector<std::string> ids{"all"};
  for (auto _ : state) benchmark::DoNotOptimize(verify::run_suite(spec, ids));
}
BENCHMARK(BM_SuiteAll)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
