#pragma once

#include <cstddef>
#include <vector>

#include "bsdom/sample_set.hpp"

namespace bsdom {

// Right-continuous univariate step CDF on [0,1]. value_at(z) returns the
// value at the largest jump coordinate <= z, and 0 below the first one.
// The terminal value is 1.
class UnivariateStepCdf {
 public:
  UnivariateStepCdf(std::vector<double> xs, std::vector<double> values);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& values() const { return values_; }
  double value_at(double z) const;

  friend bool operator==(const UnivariateStepCdf&, const UnivariateStepCdf&) = default;

 private:
  std::vector<double> xs_;      // sorted, distinct, in [0,1]
  std::vector<double> values_;  // nondecreasing, back() == 1
};

struct GridAtom {
  std::size_t ix = 0;
  std::size_t iy = 0;
  double weight = 0.0;
};

// Grid-aligned bivariate step CDF on the unit square:
//   F[i][j] = P(X <= xs[i], Y <= ys[j])
// with xs/ys the sorted distinct atom coordinates plus 1. F is
// right-continuous and constant on the half-open cells
// [xs[i], xs[i+1]) x [ys[j], ys[j+1]), which is what makes grid-point
// evaluation of dominance conditions exact.
class BivariateStepCdf {
 public:
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  std::size_t nx() const { return xs_.size(); }
  std::size_t ny() const { return ys_.size(); }

  double f(std::size_t i, std::size_t j) const { return f_[i * ys_.size() + j]; }
  // Index -1 addresses the zero boundary below the grid on that axis.
  double f_or_zero(std::ptrdiff_t i, std::ptrdiff_t j) const;

  const std::vector<double>& fx() const { return fx_; }
  const std::vector<double>& fy() const { return fy_; }
  const std::vector<GridAtom>& atoms() const { return atoms_; }
  const CommonFrame& frame() const { return frame_; }

  double atom_x(const GridAtom& a) const { return xs_[a.ix]; }
  double atom_y(const GridAtom& a) const { return ys_[a.iy]; }

 private:
  friend BivariateStepCdf build_cdf(const SampleSet&, const CommonFrame&);

  std::vector<double> xs_, ys_;
  std::vector<double> f_;        // row-major, nx * ny
  std::vector<double> fx_, fy_;  // marginal values on xs_/ys_
  std::vector<GridAtom> atoms_;
  CommonFrame frame_;
};

// Maps the set through the frame and accumulates the weight grid. Points
// outside the frame's box are an input error.
BivariateStepCdf build_cdf(const SampleSet& s, const CommonFrame& frame);

// Right-continuous evaluation at an arbitrary point of the unit square.
double eval_cdf(const BivariateStepCdf& cdf, double s, double t);

// Quasi-volume of the half-open block (xs[i_lo], xs[i_hi]] x (ys[j_lo], ys[j_hi]]:
//   F(hi,hi) + F(lo,lo) - F(hi,lo) - F(lo,hi).
// Index -1 denotes the zero boundary, so elementary blocks starting at -1
// capture mass sitting on the lowest grid coordinates.
double quasi_volume(const BivariateStepCdf& cdf, std::ptrdiff_t i_lo,
                    std::ptrdiff_t i_hi, std::ptrdiff_t j_lo, std::ptrdiff_t j_hi);

UnivariateStepCdf marginal_x(const BivariateStepCdf& cdf);
UnivariateStepCdf marginal_y(const BivariateStepCdf& cdf);

// Union of two grids, with maps in both directions: source index -> merged
// index (exact positions), and merged index -> largest source index at or
// below the merged coordinate (-1 when below the whole source grid). The
// floor maps give O(1) right-continuous evaluation on the union.
struct MergedGrid {
  std::vector<double> xs, ys;
  std::vector<std::size_t> a_x, a_y;  // a's coordinate positions in xs/ys
  std::vector<std::size_t> b_x, b_y;
  std::vector<std::ptrdiff_t> a_floor_x, a_floor_y;
  std::vector<std::ptrdiff_t> b_floor_x, b_floor_y;
};

MergedGrid merge_grids(const BivariateStepCdf& a, const BivariateStepCdf& b);
MergedGrid single_grid(const BivariateStepCdf& a);

// Evaluation lattice from explicit coordinates (sorted, distinct, within
// [0,1]); both floor maps are computed against the same cdf pair a=b when
// used with single-distribution surfaces.
MergedGrid grid_from_coordinates(std::vector<double> xs, std::vector<double> ys,
                                 const BivariateStepCdf& a, const BivariateStepCdf& b);

// Structural self-checks used by tests: marginal consistency, terminal
// value, nonnegative elementary quasi-volumes, atom reconstruction.
void validate_cdf_invariants(const BivariateStepCdf& cdf);

}  // namespace bsdom
