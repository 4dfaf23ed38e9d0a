#pragma once

#include <cstddef>
#include <vector>

#include "bsdom/piecewise_poly.hpp"
#include "bsdom/step_cdf.hpp"
#include "bsdom/verdict.hpp"

namespace bsdom {

// Double integral of a cell-wise constant integrand. On each closed grid
// cell the surface is bilinear (the integrand is constant there), and a
// bilinear function on a rectangle attains its extrema at the corners; the
// difference of two sheets on the same grid is again cell-wise bilinear, so
// comparing corner values decides the surface inequality exactly.
class BilinearSheet {
 public:
  BilinearSheet(std::vector<double> xs, std::vector<double> ys,
                std::vector<double> cell_integrand);

  const std::vector<double>& xs() const { return xs_; }  // starts at 0, ends at 1
  const std::vector<double>& ys() const { return ys_; }
  std::size_t nx() const { return xs_.size(); }
  std::size_t ny() const { return ys_.size(); }

  double corner(std::size_t i, std::size_t j) const { return v_[i * ys_.size() + j]; }

  struct CellCoeffs {
    double value = 0.0;    // at the cell's lower-left corner
    double x_slope = 0.0;
    double y_slope = 0.0;
    double cross = 0.0;    // the integrand on the cell
  };
  CellCoeffs cell(std::size_t i, std::size_t j) const;
  double cell_integrand(std::size_t i, std::size_t j) const {
    return c_[i * (ys_.size() - 1) + j];
  }

  double eval(double x, double y) const;

 private:
  std::vector<double> xs_, ys_;
  std::vector<double> v_;  // corner values, row-major nx * ny
  std::vector<double> c_;  // integrand per cell, (nx-1) * (ny-1)
};

// H(x,y) = integral of F over [0,x] x [0,y], tabulated on the merged grid
// (0 prepended to each axis when absent; the zero rows H(0,.) = H(.,0) = 0).
BilinearSheet h_surface(const BivariateStepCdf& cdf, const MergedGrid& grid);

// L(x,y) = integral of K over [0,x] x [0,y], computed from K directly.
// Cross-check identity: L(x,y) = y*HX(x) + x*HY(y) - H(x,y).
BilinearSheet l_surface(const BivariateStepCdf& cdf, const MergedGrid& grid);

// Integrated marginals HX(x) = integral of FX on [0,x] (piecewise linear,
// exact). HY symmetric.
PiecewisePolynomial h_marginal_x(const BivariateStepCdf& cdf);
PiecewisePolynomial h_marginal_y(const BivariateStepCdf& cdf);

// Condition families for the integrated order.
DominanceVerdict h_marginal_dominance_x(const BivariateStepCdf& f1,
                                        const BivariateStepCdf& f2, double tol);
DominanceVerdict h_marginal_dominance_y(const BivariateStepCdf& f1,
                                        const BivariateStepCdf& f2, double tol);
DominanceVerdict h_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol);
DominanceVerdict l_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol);

// f1 dominates f2 for increasing, coordinatewise-concave submodular
// utilities iff HX, HY and H are ordered; the supermodular variant replaces
// H by L. Implied by the matching first-order check (integration preserves
// pointwise inequalities).
DominanceVerdict check_second_order_submodular(const BivariateStepCdf& f1,
                                               const BivariateStepCdf& f2,
                                               double tol = kDefaultTolerance);
DominanceVerdict check_second_order_supermodular(const BivariateStepCdf& f1,
                                                 const BivariateStepCdf& f2,
                                                 double tol = kDefaultTolerance);

// Axis rows zero, corner monotonicity, cell quasi-volume consistency.
void validate_sheet_invariants(const BilinearSheet& sheet);

}  // namespace bsdom
