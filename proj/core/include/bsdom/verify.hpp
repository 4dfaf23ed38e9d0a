#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bsdom/sample_set.hpp"
#include "bsdom/step_cdf.hpp"
#include "bsdom/test_functions.hpp"
#include "bsdom/verdict.hpp"

namespace bsdom {

// The four checkable dominance claims: order (pointwise vs integrated)
// crossed with utility class (submodular vs supermodular).
enum class DominanceKind {
  FirstOrderSubmodular,
  FirstOrderSupermodular,
  SecondOrderSubmodular,
  SecondOrderSupermodular,
};

std::string_view to_string(DominanceKind k);

enum class PairGenerator {
  MonotoneShift,  // hypothesis-preserving for the submodular claims
  EtSwap,         // hypothesis-preserving for the supermodular claims
  Unconstrained,  // independent pairs; hypotheses genuinely filter
};

std::string_view to_string(PairGenerator g);

// n_atoms points uniform in [0,1]^2 with positive weights normalized to 1.
// Identical (seed, n_atoms) always produces the identical set.
SampleSet gen_random_sampleset(std::uint64_t seed, int n_atoms);

// Moves every atom by an independent nonnegative increment per coordinate,
// clamped into the unit square. The shifted set's CDF is <= the original's
// everywhere, so (shifted, original) satisfies the submodular hypothesis.
SampleSet monotone_shift(const SampleSet& s, std::uint64_t seed);
// Deterministic variant with explicit increments (dx, dy per atom).
SampleSet shift_points(const SampleSet& s, const std::vector<double>& dx,
                       const std::vector<double>& dy);

// Correlation-increasing rearrangement: picks atoms at (a,d) and (b,c) with
// a < b, c < d and both weights >= epsilon, and moves epsilon of weight from
// each onto (a,c) and (b,d). Marginals are preserved exactly and the CDF
// rises pointwise (by epsilon on [a,b) x [c,d)), so (after, before)
// satisfies the supermodular hypothesis. Repeats `count` times; stops early
// when no eligible pair remains.
struct EtSwapResult {
  SampleSet set;
  int swaps_performed = 0;
};

EtSwapResult et_swap(const SampleSet& s, std::uint64_t seed, double epsilon, int count);

struct CampaignConfig {
  std::uint64_t master_seed = 0;
  int trials = 100;
  int min_atoms = 2;
  int max_atoms = 12;
  PairGenerator generator = PairGenerator::MonotoneShift;
  DominanceKind kind = DominanceKind::FirstOrderSubmodular;
  int phi_per_trial = 10;
  double tolerance = kDefaultTolerance;

  friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

// Everything needed to replay a failure by hand: the per-trial seed, both
// atom lists, and the sampled utility's descriptor.
struct ViolationRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  std::string phi;
  double e1 = 0.0;
  double e2 = 0.0;
  std::vector<SamplePoint> points1, points2;
  std::vector<double> weights1, weights2;

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

struct CampaignReport {
  CampaignConfig config;
  int trials_run = 0;
  int condition_satisfied = 0;
  std::vector<ViolationRecord> violations;
  // Smallest E1[phi] - E2[phi] across hypothesis-satisfying trials; absent
  // when no trial satisfied the hypothesis.
  std::optional<double> min_margin;

  friend bool operator==(const CampaignReport&, const CampaignReport&) = default;
};

// Per trial: generate a pair, verify the claim's hypothesis with the
// matching checker, and when it holds assert the expectation ordering
// E1[phi] >= E2[phi] - tol for each sampled phi from the matching class.
// Identical configs produce identical reports.
CampaignReport run_campaign(const CampaignConfig& cfg);

// The canonical pair showing the two first-order hypotheses are not
// interchangeable: f1 puts mass 1/2 on (1,0) and (0,1), f2 on (0,0) and
// (1,1). F1 <= F2 pointwise (submodular conclusion applies), yet for the
// supermodular witness phi = xy the ordering fails: E1 = 0 < 0.5 = E2, and
// K1(1/2,1/2) = 1 > 1/2 = K2(1/2,1/2).
struct BoundaryCounterexample {
  SampleSet set1, set2;
  BivariateStepCdf f1, f2;
  TestFunction phi;
  double e1 = 0.0;
  double e2 = 0.0;
};

BoundaryCounterexample boundary_counterexample();

}  // namespace bsdom
