#include <benchmark/benchmark.h>

#include <telesim/protocol.hpp>
#include <telesim/rng.hpp>
#include <telesim/stats.hpp>
#include <telesim/tomography.hpp>

using namespace telesim;

static void bm_bell_decompose(benchmark::State& state) {
  auto rng = make_stream(1, 1);
  const PureState psi = haar_random_state(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bell_decompose(psi));
  }
}
BENCHMARK(bm_bell_decompose);

static void bm_run_trial(benchmark::State& state) {
  auto rng = make_stream(2, 1);
  const PureState psi = PureState::d();
  const NoiseParams noise;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_trial(psi, noise, FeedForwardMode::WithFeedForward, rng));
  }
}
BENCHMARK(bm_run_trial);

static void bm_reconstruct_state(benchmark::State& state) {
  auto rng = make_stream(3, 1);
  const CountTable counts =
      simulate_counts(DensityMatrix::pure(PureState::r()), 100000, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_state(counts));
  }
}
BENCHMARK(bm_reconstruct_state);

static void bm_reconstruct_process(benchmark::State& state) {
  std::map<InputStateLabel, DensityMatrix> outputs;
  for (const auto label : kInputLabels) {
    outputs.emplace(label, apply_unitary(pauli::Y(), DensityMatrix::pure(
                                                         input_state(label))));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_process(outputs));
  }
}
BENCHMARK(bm_reconstruct_process);

static void bm_hoeffding(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(hoeffding_pvalue(0.85, 240));
  }
}
BENCHMARK(bm_hoeffding);

BENCHMARK_MAIN();
