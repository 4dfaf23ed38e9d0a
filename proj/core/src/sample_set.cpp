#include "bsdom/sample_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bsdom {

SampleSet::SampleSet(std::vector<SamplePoint> points, std::vector<double> weights) {
  if (points.empty()) {
    throw std::invalid_argument("sample set must contain at least one point");
  }
  if (points.size() != weights.size()) {
    throw std::invalid_argument("point and weight counts differ");
  }
  for (double w : weights) {
    if (!(w >= 0.0)) {  // catches negatives and NaN
      throw std::invalid_argument("weights must be nonnegative");
    }
  }
  for (const SamplePoint& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("points must be finite");
    }
  }

  // Merge exact duplicates, keeping first-occurrence order stable.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].x != points[b].x) return points[a].x < points[b].x;
    return points[a].y < points[b].y;
  });
  points_.reserve(points.size());
  weights_.reserve(points.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const SamplePoint& p = points[order[k]];
    if (!points_.empty() && points_.back() == p) {
      weights_.back() += weights[order[k]];
    } else {
      points_.push_back(p);
      weights_.push_back(weights[order[k]]);
    }
  }

  double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::invalid_argument("total weight must be positive");
  }
  for (double& w : weights_) w /= total;
}

SampleSet SampleSet::unweighted(std::vector<SamplePoint> points) {
  std::vector<double> weights(points.size(), 1.0);
  return SampleSet(std::move(points), std::move(weights));
}

bool CommonFrame::contains(const SamplePoint& p) const {
  return p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
}

namespace {

struct AxisRange {
  double lo, hi;
};

AxisRange widen_if_degenerate(double lo, double hi) {
  if (lo < hi) return {lo, hi};
  const double pad = std::max(1.0, std::abs(lo));
  return {lo - pad, hi + pad};
}

CommonFrame frame_of_ranges(double x_lo, double x_hi, double y_lo, double y_hi) {
  const AxisRange x = widen_if_degenerate(x_lo, x_hi);
  const AxisRange y = widen_if_degenerate(y_lo, y_hi);
  return CommonFrame{x.lo, x.hi, y.lo, y.hi};
}

}  // namespace

CommonFrame build_common_frame(const SampleSet& a, const SampleSet& b) {
  double x_lo = a.points()[0].x, x_hi = x_lo;
  double y_lo = a.points()[0].y, y_hi = y_lo;
  for (const SampleSet* s : {&a, &b}) {
    for (const SamplePoint& p : s->points()) {
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
  }
  return frame_of_ranges(x_lo, x_hi, y_lo, y_hi);
}

CommonFrame bounding_frame(const SampleSet& s) { return build_common_frame(s, s); }

}  // namespace bsdom
