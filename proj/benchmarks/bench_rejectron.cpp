#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "rejectron/config.hpp"
#include "rejectron/harness.hpp"
#include "rejectron/kernel.hpp"
#include "rejectron/linear.hpp"
#include "rejectron/losses.hpp"
#include "rejectron/query.hpp"
#include "rejectron/rng.hpp"

namespace {

using namespace rejectron;

SparseVector dense_vector(std::size_t dim, SeededRng& rng) {
  std::vector<Feature> items;
  items.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j)
    items.push_back({static_cast<std::uint32_t>(j + 1), rng.next_unit() - 0.5});
  return SparseVector(std::move(items));
}

void BM_sigmoid(benchmark::State& state) {
  double a = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sigmoid(a, 2.0));
    a = a < 3.0 ? a + 1e-3 : -3.0;
  }
}
BENCHMARK(BM_sigmoid);

void BM_ds_gradient(benchmark::State& state) {
  const HyperParams hp(0.25, 2.0);
  double u = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ds_gradient(Margin(u), RejectionWidth(1.0), hp));
    u = u < 3.0 ? u + 1e-3 : -3.0;
  }
}
BENCHMARK(BM_ds_gradient);

void BM_dral_step(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  SeededRng rng(42);
  const SparseVector x = dense_vector(dim, rng);
  LinearModel model = init_model(dim, LearnerVariant::dral);
  int label = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dral_step(model, x, label, 0.25, 0.01, rng));
    label = -label;
  }
}
BENCHMARK(BM_dral_step)->Arg(16)->Arg(128);

void BM_dsal_step(benchmark::State& state) {
  const std::size_t dim = static_cast<std::size_t>(state.range(0));
  SeededRng rng(42);
  const SparseVector x = dense_vector(dim, rng);
  LinearModel model = init_model(dim, LearnerVariant::dsal);
  const HyperParams hp(0.25, 2.0);
  int label = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsal_step(model, x, label, hp, 0.01, rng));
    label = -label;
  }
}
BENCHMARK(BM_dsal_step)->Arg(16)->Arg(128);

void BM_kernel_predict(benchmark::State& state) {
  const std::size_t supports = static_cast<std::size_t>(state.range(0));
  constexpr std::size_t dim = 16;
  SeededRng rng(42);
  KernelSpec spec;
  spec.kind = KernelKind::rbf;
  spec.width = 1.0;
  KernelModel model = init_kernel_model(dim, spec);
  const HyperParams hp(0.25, 2.0);
  while (model.supports.size() < supports)
    kernel_dsal_step(model, dense_vector(dim, rng), rng.next_unit() < 0.5 ? 1 : -1, hp, 0.01,
                     rng);
  const SparseVector probe = dense_vector(dim, rng);
  for (auto _ : state) benchmark::DoNotOptimize(kernel_predict_value(model, probe));
}
BENCHMARK(BM_kernel_predict)->Arg(64)->Arg(512);

void BM_run_once(benchmark::State& state) {
  RunConfig cfg;
  cfg.learner = LearnerKind::dsal;
  cfg.T = static_cast<std::uint64_t>(state.range(0));
  cfg.repetitions = 1;
  cfg.dataset.synth.n = 200;
  cfg.dataset.synth.dim = 10;
  const PreparedDataset ds = prepare_dataset(cfg);
  std::uint64_t rep = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_once(cfg, ds, repetition_seed(cfg.base_seed, rep++ % 16)));
}
BENCHMARK(BM_run_once)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
