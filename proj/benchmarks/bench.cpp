#include <benchmark/benchmark.h>

#include "cunningham/arith.hpp"
#include "cunningham/certify.hpp"
#include "cunningham/chain.hpp"
#include "cunningham/search.hpp"

using cunningham::Integer;
using cunningham::LinearMap;

namespace {

void IsPrimeWord(benchmark::State& state) {
  const Integer n("18446744073709551557");  // largest prime below 2^64
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::is_prime(n));
  }
}
BENCHMARK(IsPrimeWord);

void IsPrimeWide(benchmark::State& state) {
  const Integer n = (Integer(1) << state.range(0)) - 1;  // Mersenne exponents
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::is_prime(n));
  }
}
BENCHMARK(IsPrimeWide)->Arg(127)->Arg(521)->Arg(1279);

void FactorizeSemiprime(benchmark::State& state) {
  const Integer n = Integer("4294967311") * Integer("4294967357");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::factorize(n));
  }
}
BENCHMARK(FactorizeSemiprime);

void IterateModLargeExponent(benchmark::State& state) {
  const LinearMap f(2, 3);
  const Integer n = (Integer(1) << state.range(0)) + 9;
  const Integer p("1000000007");
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::iterate_mod(f, 32, n, p));
  }
}
BENCHMARK(IterateModLargeExponent)->Arg(64)->Arg(1024)->Arg(8192);

void RootedChainDepth(benchmark::State& state) {
  const LinearMap f(2, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::rooted_chain(f, 32, 64));
  }
}
BENCHMARK(RootedChainDepth);

void TightenRoot(benchmark::State& state) {
  const LinearMap f(2, 3);
  for (auto _ : state) {
    for (int z = 22; z <= 60; ++z) {
      if (cunningham::gcd(z, 3) > 1) continue;
      benchmark::DoNotOptimize(cunningham::tighten(f, z));
    }
  }
}
BENCHMARK(TightenRoot);

void VerifyCertificate(benchmark::State& state) {
  const auto cert = cunningham::tighten(LinearMap(2, 3), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::verify_certificate(cert));
  }
}
BENCHMARK(VerifyCertificate);

void SearchRangeJobs(benchmark::State& state) {
  const cunningham::SearchTask task{LinearMap(2, 3), 1, 4000, 4, 48};
  const unsigned jobs = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cunningham::search_range(task, jobs));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SearchRangeJobs)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  ::benchmark::Initialize(&argc, argv);
  if (::benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  ::benchmark::RunSpecifiedBenchmarks();
  ::benchmark::Shutdown();
  return 0;
}
