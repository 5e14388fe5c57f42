#include <benchmark/benchmark.h>

#include "nfagen/chain.hpp"
#include "nfagen/isomorphism.hpp"
#include "nfagen/metropolis.hpp"
#include "nfagen/random.hpp"

namespace {

using namespace nfagen;

Nfa walked(const ClassSpec& c, int n, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0);
  const ChainParams params = default_params(c);
  Nfa x = chain_start(c, n, Alphabet(2));
  for (std::uint64_t t = 0; t < default_steps(n); ++t) x = step(x, c, params, rng);
  return x;
}

void BM_ChainStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClassSpec c = ClassSpec::trim();
  const ChainParams params = default_params(c);
  Rng rng = make_rng(1, 0);
  Nfa x = chain_start(c, n, Alphabet(2));
  for (auto _ : state) {
    x = step(x, c, params, rng);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ChainStep)->Arg(5)->Arg(10)->Arg(20);

void BM_MetropolisStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClassSpec c = ClassSpec::trim();
  const ChainParams params = default_params(c);
  Rng rng = make_rng(2, 0);
  AutCache cache;
  MetropolisState s = MetropolisState::start(walked(c, n, 2), c, &cache);
  for (auto _ : state) {
    metropolis_step(s, c, params, rng, &cache);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_MetropolisStep)->Arg(5)->Arg(10)->Arg(15);

void BM_CountAutomorphisms(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Nfa x = walked(ClassSpec::trim(), n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(count_automorphisms(x));
}
BENCHMARK(BM_CountAutomorphisms)->Arg(5)->Arg(10)->Arg(20);

void BM_CountAutomorphismsSymmetric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Nfa x = chain_start(ClassSpec::trim(), n, Alphabet(2));
  for (auto _ : state) benchmark::DoNotOptimize(count_automorphisms(x));
}
BENCHMARK(BM_CountAutomorphismsSymmetric)->Arg(5)->Arg(10)->Arg(20);

void BM_CanonicalForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Nfa x = walked(ClassSpec::trim(), n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(x));
}
BENCHMARK(BM_CanonicalForm)->Arg(5)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
