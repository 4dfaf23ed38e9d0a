#pragma once

#include <cstddef>
#include <vector>

#include "bsdom/sample_set.hpp"
#include "bsdom/step_cdf.hpp"
#include "bsdom/test_functions.hpp"

namespace bsdom {

// Rectangular partition of the unit square with one selection point per
// block. Cuts include 0 and 1; block (bi, bj) is the half-open rectangle
// (x_cuts[bi], x_cuts[bi+1]] x (y_cuts[bj], y_cuts[bj+1]] and its selection
// point lies in the block's closure. The default rule picks the upper-right
// corner, which makes selection points coincide with cuts.
class Partition {
 public:
  Partition(std::vector<double> x_cuts, std::vector<double> y_cuts,
            std::vector<SamplePoint> selections);

  static Partition upper_right(std::vector<double> x_cuts, std::vector<double> y_cuts);
  static Partition uniform_upper_right(std::size_t nx_blocks, std::size_t ny_blocks);

  const std::vector<double>& x_cuts() const { return x_cuts_; }
  const std::vector<double>& y_cuts() const { return y_cuts_; }
  std::size_t nx_blocks() const { return x_cuts_.size() - 1; }
  std::size_t ny_blocks() const { return y_cuts_.size() - 1; }
  const SamplePoint& selection(std::size_t bi, std::size_t bj) const {
    return selections_[bi * ny_blocks() + bj];
  }

 private:
  std::vector<double> x_cuts_, y_cuts_;
  std::vector<SamplePoint> selections_;  // row-major nx_blocks * ny_blocks
};

// Riemann-Stieltjes partition sum: sum over blocks of
// phi(selection) * quasi-volume(block), with the quasi-volume taken from
// right-continuous CDF evaluations at the cut corners. When the cuts
// include every atom coordinate and selections are upper-right corners,
// each atom is captured at its own coordinates and the sum equals
// exact_expectation (half-open blocks; atoms exactly on the x=0/y=0 lines
// fall outside every block, matching the standing assumption that F
// vanishes on the lower-left boundary).
double partition_sum(const TestFunction& phi, const BivariateStepCdf& cdf,
                     const Partition& p);

// Atomic expectation: sum of weight * phi(atom).
double exact_expectation(const TestFunction& phi, const SampleSet& s);
double exact_expectation(const TestFunction& phi, const BivariateStepCdf& cdf);

// Four-point alternating sum over the selection points of the four blocks
// meeting at interior grid point (x_cuts[i], y_cuts[j]), 1 <= i <= nx-1,
// 1 <= j <= ny-1:
//   phi(s[i][j]) + phi(s[i+1][j+1]) - phi(s[i][j+1]) - phi(s[i+1][j])
// in 1-based block labels. Its sign follows the mixed partial of phi over
// the spanned rectangle (selection points of adjacent blocks are ordered
// per coordinate), which is the discrete core of both dominance directions.
double delta_interior(const TestFunction& phi, const Partition& p,
                      std::size_t i, std::size_t j);

// Last-column / last-row first differences:
//   delta_border_x(i) = phi(s[i][ny]) - phi(s[i+1][ny])
//   delta_border_y(j) = phi(s[nx][j]) - phi(s[nx][j+1])
// (1-based block labels; nonpositive for increasing phi).
double delta_border_x(const TestFunction& phi, const Partition& p, std::size_t i);
double delta_border_y(const TestFunction& phi, const Partition& p, std::size_t j);

// Exact regrouping of the partition sum by CDF factors:
//   total = interior + border_x + border_y + corner
// where interior pairs F at interior grid points with delta_interior,
// border_x pairs F(x_i, 1) with delta_border_x, border_y pairs F(1, y_j)
// with delta_border_y, and corner is phi at the top-right block's selection
// (phi(1,1) under the upper-right rule). Equals partition_sum whenever F
// vanishes on the x=0/y=0 lines.
struct SumDecomposition {
  double interior = 0.0;
  double border_x = 0.0;
  double border_y = 0.0;
  double corner = 0.0;
  double total = 0.0;
};

SumDecomposition decompose_sum(const TestFunction& phi, const BivariateStepCdf& cdf,
                               const Partition& p);

// Equivalent rearrangement driven by K instead of F:
//   - sum K(x_i,y_j) * delta_interior(i,j)
//   + sum F(x_i, 1) * (first-row deltas) + sum F(1, y_j) * (first-column deltas)
//   + corner.
// Always equals decompose_sum(...).total (pure algebra), hence the same
// partition-sum identity.
double supermodular_form(const TestFunction& phi, const BivariateStepCdf& cdf,
                         const Partition& p);

// Telescoping identities relating border deltas to interior ones:
//   delta_border_x(i) = (first-row delta at i) - sum over j of delta_interior(i,j)
//   delta_border_y(j) = (first-column delta at j) - sum over i of delta_interior(i,j)
// direct and telescoped are computed independently and must agree.
struct TelescopePair {
  double direct = 0.0;
  double telescoped = 0.0;
};

TelescopePair telescope_check_x(const TestFunction& phi, const Partition& p, std::size_t i);
TelescopePair telescope_check_y(const TestFunction& phi, const Partition& p, std::size_t j);

}  // namespace bsdom
