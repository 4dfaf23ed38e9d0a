#include "bsdom/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bsdom/first_order.hpp"
#include "bsdom/rng.hpp"
#include "bsdom/second_order.hpp"
#include "bsdom/stieltjes.hpp"

namespace bsdom {

std::string_view to_string(DominanceKind k) {
  switch (k) {
    case DominanceKind::FirstOrderSubmodular: return "first-order submodular";
    case DominanceKind::FirstOrderSupermodular: return "first-order supermodular";
    case DominanceKind::SecondOrderSubmodular: return "second-order submodular";
    case DominanceKind::SecondOrderSupermodular: return "second-order supermodular";
  }
  return "first-order submodular";
}

std::string_view to_string(PairGenerator g) {
  switch (g) {
    case PairGenerator::MonotoneShift: return "monotone-shift";
    case PairGenerator::EtSwap: return "et-swap";
    case PairGenerator::Unconstrained: return "unconstrained";
  }
  return "monotone-shift";
}

SampleSet gen_random_sampleset(std::uint64_t seed, int n_atoms) {
  if (n_atoms < 1) throw std::invalid_argument("need at least one atom");
  Rng r(seed);
  std::vector<SamplePoint> pts(static_cast<std::size_t>(n_atoms));
  std::vector<double> wts(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    pts[i] = {r.uniform(), r.uniform()};
    wts[i] = r.uniform(0.1, 1.0);
  }
  return SampleSet(std::move(pts), std::move(wts));
}

SampleSet monotone_shift(const SampleSet& s, std::uint64_t seed) {
  Rng r(seed);
  std::vector<double> dx(s.points().size()), dy(s.points().size());
  for (std::size_t i = 0; i < dx.size(); ++i) {
    dx[i] = r.uniform(0.0, 0.3);
    dy[i] = r.uniform(0.0, 0.3);
  }
  return shift_points(s, dx, dy);
}

SampleSet shift_points(const SampleSet& s, const std::vector<double>& dx,
                       const std::vector<double>& dy) {
  if (dx.size() != s.points().size() || dy.size() != s.points().size()) {
    throw std::invalid_argument("one increment pair per atom required");
  }
  std::vector<SamplePoint> pts = s.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!(dx[i] >= 0.0) || !(dy[i] >= 0.0) || !std::isfinite(dx[i]) ||
        !std::isfinite(dy[i])) {
      throw std::invalid_argument("shift increments must be nonnegative");
    }
    pts[i].x = std::min(1.0, pts[i].x + dx[i]);
    pts[i].y = std::min(1.0, pts[i].y + dy[i]);
  }
  return SampleSet(std::move(pts), s.weights());
}

EtSwapResult et_swap(const SampleSet& s, std::uint64_t seed, double epsilon, int count) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("swap amount must be positive");
  }
  if (count < 0) throw std::invalid_argument("swap count must be nonnegative");

  Rng r(seed);
  std::vector<SamplePoint> pts = s.points();
  std::vector<double> wts = s.weights();
  int performed = 0;

  for (int step = 0; step < count; ++step) {
    // Anti-ordered pairs (u at the top-left, v at the bottom-right) with
    // enough weight on both sides to move epsilon.
    std::vector<std::pair<std::size_t, std::size_t>> eligible;
    for (std::size_t u = 0; u < pts.size(); ++u) {
      for (std::size_t v = 0; v < pts.size(); ++v) {
        if (pts[u].x < pts[v].x && pts[u].y > pts[v].y && wts[u] >= epsilon &&
            wts[v] >= epsilon) {
          eligible.emplace_back(u, v);
        }
      }
    }
    if (eligible.empty()) break;
    const auto [u, v] = eligible[static_cast<std::size_t>(
        r.uniform_int(0, static_cast<std::int64_t>(eligible.size()) - 1))];
    wts[u] -= epsilon;
    wts[v] -= epsilon;
    pts.push_back({pts[u].x, pts[v].y});
    wts.push_back(epsilon);
    pts.push_back({pts[v].x, pts[u].y});
    wts.push_back(epsilon);
    ++performed;
  }

  return {SampleSet(std::move(pts), std::move(wts)), performed};
}

namespace {

DominanceVerdict hypothesis_verdict(DominanceKind kind, const BivariateStepCdf& f1,
                                    const BivariateStepCdf& f2, double tol) {
  switch (kind) {
    case DominanceKind::FirstOrderSubmodular:
      return check_first_order_submodular(f1, f2, tol);
    case DominanceKind::FirstOrderSupermodular:
      return check_first_order_supermodular(f1, f2, tol);
    case DominanceKind::SecondOrderSubmodular:
      return check_second_order_submodular(f1, f2, tol);
    case DominanceKind::SecondOrderSupermodular:
      return check_second_order_supermodular(f1, f2, tol);
  }
  throw std::invalid_argument("unknown dominance kind");
}

TestFunction sample_phi(DominanceKind kind, Rng& r) {
  const auto cone2 = [&r](const TestFunction& a, const TestFunction& b) {
    const TestFunction members[] = {a, b};
    const double weights[] = {r.uniform(0.1, 1.0), r.uniform(0.1, 1.0)};
    return cone_combine(members, weights);
  };
  switch (kind) {
    case DominanceKind::FirstOrderSubmodular: {
      const auto choice = r.uniform_int(0, 2);
      if (choice == 0) return modular_complement(r.uniform(0.0, 1.0));
      if (choice == 1) {
        return neg_complement_power(r.uniform(1.0, 3.0), r.uniform(1.0, 3.0));
      }
      if (r.uniform() < 0.5) {
        return cone2(modular_complement(r.uniform(0.0, 1.0)),
                     modular_complement(r.uniform(0.0, 1.0)));
      }
      return cone2(neg_complement_power(r.uniform(1.1, 3.0), r.uniform(1.1, 3.0)),
                   neg_complement_power(r.uniform(1.1, 3.0), r.uniform(1.1, 3.0)));
    }
    case DominanceKind::FirstOrderSupermodular: {
      const auto choice = r.uniform_int(0, 2);
      if (choice == 0) return cobb_douglas(1.0, 1.0);
      if (choice == 1) return cobb_douglas(r.uniform(0.2, 1.0), r.uniform(0.2, 1.0));
      return cone2(cobb_douglas(r.uniform(0.2, 0.95), r.uniform(0.2, 0.95)),
                   cobb_douglas(r.uniform(0.2, 0.95), r.uniform(0.2, 0.95)));
    }
    case DominanceKind::SecondOrderSubmodular: {
      if (r.uniform_int(0, 1) == 0) {
        return neg_complement_power(r.uniform(1.2, 3.0), r.uniform(1.2, 3.0));
      }
      return cone2(neg_complement_power(r.uniform(1.2, 3.0), r.uniform(1.2, 3.0)),
                   neg_complement_power(r.uniform(1.2, 3.0), r.uniform(1.2, 3.0)));
    }
    case DominanceKind::SecondOrderSupermodular: {
      if (r.uniform_int(0, 1) == 0) {
        return cobb_douglas(r.uniform(0.2, 0.95), r.uniform(0.2, 0.95));
      }
      return cone2(cobb_douglas(r.uniform(0.2, 0.95), r.uniform(0.2, 0.95)),
                   cobb_douglas(r.uniform(0.2, 0.95), r.uniform(0.2, 0.95)));
    }
  }
  throw std::invalid_argument("unknown dominance kind");
}

std::pair<SampleSet, SampleSet> sample_pair(const CampaignConfig& cfg,
                                            std::uint64_t trial_seed, Rng& r) {
  const int n = cfg.min_atoms + static_cast<int>(r.uniform_int(
                                    0, cfg.max_atoms - cfg.min_atoms));
  const SampleSet base = gen_random_sampleset(derive_seed(trial_seed, 1), n);
  switch (cfg.generator) {
    case PairGenerator::MonotoneShift:
      return {monotone_shift(base, derive_seed(trial_seed, 2)), base};
    case PairGenerator::EtSwap: {
      const double min_w = *std::min_element(base.weights().begin(), base.weights().end());
      EtSwapResult swapped = et_swap(base, derive_seed(trial_seed, 2), 0.5 * min_w, 3);
      return {std::move(swapped.set), base};
    }
    case PairGenerator::Unconstrained: {
      const int n2 = cfg.min_atoms + static_cast<int>(r.uniform_int(
                                         0, cfg.max_atoms - cfg.min_atoms));
      return {gen_random_sampleset(derive_seed(trial_seed, 2), n),
              gen_random_sampleset(derive_seed(trial_seed, 3), n2)};
    }
  }
  throw std::invalid_argument("unknown pair generator");
}

}  // namespace

CampaignReport run_campaign(const CampaignConfig& cfg) {
  if (cfg.trials < 0) throw std::invalid_argument("trial count must be nonnegative");
  if (cfg.min_atoms < 1 || cfg.max_atoms < cfg.min_atoms) {
    throw std::invalid_argument("atom bounds must satisfy 1 <= min <= max");
  }
  if (cfg.phi_per_trial < 1) throw std::invalid_argument("need at least one utility per trial");
  if (!(cfg.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");

  CampaignReport report;
  report.config = cfg;
  const CommonFrame frame = CommonFrame::identity();

  for (int t = 0; t < cfg.trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    Rng r(trial_seed);
    const auto [s1, s2] = sample_pair(cfg, trial_seed, r);
    const BivariateStepCdf f1 = build_cdf(s1, frame);
    const BivariateStepCdf f2 = build_cdf(s2, frame);
    ++report.trials_run;

    if (!hypothesis_verdict(cfg.kind, f1, f2, cfg.tolerance).holds) continue;
    ++report.condition_satisfied;

    for (int k = 0; k < cfg.phi_per_trial; ++k) {
      Rng pr(derive_seed(trial_seed, 1000 + static_cast<std::uint64_t>(k)));
      const TestFunction phi = sample_phi(cfg.kind, pr);
      const double e1 = exact_expectation(phi, s1);
      const double e2 = exact_expectation(phi, s2);
      const double margin = e1 - e2;
      if (!report.min_margin || margin < *report.min_margin) report.min_margin = margin;
      if (margin < -cfg.tolerance) {
        report.violations.push_back({t, trial_seed, phi.descriptor(), e1, e2, s1.points(),
                                     s2.points(), s1.weights(), s2.weights()});
      }
    }
  }
  return report;
}

BoundaryCounterexample boundary_counterexample() {
  const SampleSet s1({{1.0, 0.0}, {0.0, 1.0}}, {0.5, 0.5});
  const SampleSet s2({{0.0, 0.0}, {1.0, 1.0}}, {0.5, 0.5});
  const CommonFrame frame = CommonFrame::identity();
  BivariateStepCdf f1 = build_cdf(s1, frame);
  BivariateStepCdf f2 = build_cdf(s2, frame);
  TestFunction phi = cobb_douglas(1.0, 1.0);
  const double e1 = exact_expectation(phi, s1);
  const double e2 = exact_expectation(phi, s2);
  return {s1, s2, std::move(f1), std::move(f2), std::move(phi), e1, e2};
}

}  // namespace bsdom
