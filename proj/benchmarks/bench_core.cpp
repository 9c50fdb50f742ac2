#include <benchmark/benchmark.h>

#include "azr/channel.hpp"
#include "azr/divergence.hpp"
#include "azr/random.hpp"
#include "azr/variational.hpp"

namespace {

azr::StatePair random_pair(std::size_t n) {
  azr::Rng rng(7);
  return {azr::random_state(rng, n), azr::random_state(rng, n)};
}

void BM_Eigh(benchmark::State& state) {
  azr::Rng rng(1);
  const azr::Matrix h = azr::random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(azr::eigh(h));
}
BENCHMARK(BM_Eigh)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_SingularValues(benchmark::State& state) {
  azr::Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const azr::Matrix a = azr::random_gaussian(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(azr::singular_values(a));
}
BENCHMARK(BM_SingularValues)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_QBelowOne(benchmark::State& state) {
  const azr::StatePair pair = random_pair(static_cast<std::size_t>(state.range(0)));
  const azr::DivergenceParams params(0.6, 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(azr::q_alpha_z(pair, params));
}
BENCHMARK(BM_QBelowOne)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_QAboveOne(benchmark::State& state) {
  const azr::StatePair pair = random_pair(static_cast<std::size_t>(state.range(0)));
  const azr::DivergenceParams params(2.0, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(azr::q_alpha_z(pair, params));
}
BENCHMARK(BM_QAboveOne)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ClosedFormWitness(benchmark::State& state) {
  const azr::StatePair pair = random_pair(static_cast<std::size_t>(state.range(0)));
  const azr::DivergenceParams params(0.4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(azr::closed_form_witness(pair, params));
}
BENCHMARK(BM_ClosedFormWitness)->Arg(2)->Arg(4)->Arg(8);

void BM_PetzRecovery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const azr::Channel ch = azr::random_channel(n, n, 2, 3);
  azr::Rng rng(4);
  const azr::PsdElement phi = azr::random_state(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(azr::petz_recovery(ch, phi));
}
BENCHMARK(BM_PetzRecovery)->Arg(2)->Arg(3)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
