#pragma once

#include <cstddef>
#include <vector>

namespace bsdom {

struct SamplePoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const SamplePoint&, const SamplePoint&) = default;
};

// Weighted planar point cloud in source units. Construction normalizes the
// weights to sum 1 and merges exactly coincident points by summing their
// weights, so downstream grids see each location once.
class SampleSet {
 public:
  SampleSet(std::vector<SamplePoint> points, std::vector<double> weights);

  // Every point with the same weight (1/n after normalization).
  static SampleSet unweighted(std::vector<SamplePoint> points);

  const std::vector<SamplePoint>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  SampleSet() = default;

  std::vector<SamplePoint> points_;
  std::vector<double> weights_;
};

// Axis-aligned box together with the affine maps that send it onto the unit
// square. Both sides of a comparison must be normalized through the same
// frame; the map is strictly increasing per coordinate, so dominance
// orderings and utility-class memberships survive the change of units.
struct CommonFrame {
  double x_lo = 0.0;
  double x_hi = 1.0;
  double y_lo = 0.0;
  double y_hi = 1.0;

  static CommonFrame identity() { return CommonFrame{0.0, 1.0, 0.0, 1.0}; }

  double map_x(double x) const { return (x - x_lo) / (x_hi - x_lo); }
  double map_y(double y) const { return (y - y_lo) / (y_hi - y_lo); }
  bool contains(const SamplePoint& p) const;

  friend bool operator==(const CommonFrame&, const CommonFrame&) = default;
};

// Joint bounding box of both sets. A degenerate axis (every point equal) is
// widened by max(1, |coordinate|) on each side so the map stays well defined
// and the lone coordinate lands in the interior.
CommonFrame build_common_frame(const SampleSet& a, const SampleSet& b);

// Bounding box of a single set, widened the same way when degenerate.
CommonFrame bounding_frame(const SampleSet& s);

}  // namespace bsdom
