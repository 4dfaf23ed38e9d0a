// Microbenchmarks for the hot paths: CDF construction, dominance checks,
// integral surfaces, partition sums, and a small end-to-end campaign.
// Sizes are swept over the atom counts the verification campaigns use.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "bsdom/first_order.hpp"
#include "bsdom/second_order.hpp"
#include "bsdom/stieltjes.hpp"
#include "bsdom/test_functions.hpp"
#include "bsdom/verify.hpp"

using namespace bsdom;

namespace {

SampleSet make_set(std::uint64_t seed, int atoms) {
  return gen_random_sampleset(seed, atoms);
}

void bm_build_cdf(benchmark::State& state) {
  SampleSet s = make_set(11, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BivariateStepCdf cdf = build_cdf(s, CommonFrame::identity());
    benchmark::DoNotOptimize(cdf);
  }
}
BENCHMARK(bm_build_cdf)->Arg(4)->Arg(12)->Arg(64);

void bm_first_order_check(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  SampleSet base = make_set(23, n);
  SampleSet shifted = monotone_shift(base, 29);
  BivariateStepCdf f1 = build_cdf(shifted, CommonFrame::identity());
  BivariateStepCdf f2 = build_cdf(base, CommonFrame::identity());
  for (auto _ : state) {
    DominanceVerdict v = check_first_order_submodular(f1, f2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_first_order_check)->Arg(4)->Arg(12)->Arg(64);

void bm_second_order_surface(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  BivariateStepCdf cdf = build_cdf(make_set(37, n), CommonFrame::identity());
  MergedGrid grid = single_grid(cdf);
  for (auto _ : state) {
    BilinearSheet h = h_surface(cdf, grid);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(bm_second_order_surface)->Arg(4)->Arg(12)->Arg(64);

void bm_partition_sum(benchmark::State& state) {
  std::size_t blocks = static_cast<std::size_t>(state.range(0));
  BivariateStepCdf cdf = build_cdf(make_set(41, 12), CommonFrame::identity());
  Partition p = Partition::uniform_upper_right(blocks, blocks);
  TestFunction phi = cobb_douglas(0.5, 0.5);
  for (auto _ : state) {
    double v = partition_sum(phi, cdf, p);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_partition_sum)->Arg(8)->Arg(32)->Arg(128);

void bm_exact_expectation(benchmark::State& state) {
  SampleSet s = make_set(43, static_cast<int>(state.range(0)));
  TestFunction phi = neg_complement_power(2.0, 2.0);
  for (auto _ : state) {
    double v = exact_expectation(phi, s);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_exact_expectation)->Arg(12)->Arg(256);

void bm_small_campaign(benchmark::State& state) {
  CampaignConfig cfg;
  cfg.master_seed = 47;
  cfg.trials = static_cast<int>(state.range(0));
  cfg.phi_per_trial = 5;
  cfg.kind = DominanceKind::FirstOrderSubmodular;
  cfg.generator = PairGenerator::MonotoneShift;
  for (auto _ : state) {
    CampaignReport rep = run_campaign(cfg);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_small_campaign)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
