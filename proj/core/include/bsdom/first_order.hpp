#pragma once

#include <vector>

#include "bsdom/step_cdf.hpp"
#include "bsdom/verdict.hpp"

namespace bsdom {

// Why grid checks decide conditions quantified over the whole unit square:
// a step CDF is constant on the half-open cells of its own grid, so two step
// CDFs are simultaneously constant on the cells of their merged grid. Every
// cell's value is attained at its lower-left merged-grid point, and the
// strips below the smallest coordinates are covered by prepending 0 to each
// axis (where marginals and F evaluate right-continuously to the mass at 0).
// Hence sup over [0,1]^2 of (lhs - rhs) equals the max over the finite
// lattice, with no discretization error.

// K(s,t) = FX(s) + FY(t) - F(s,t), tabulated on an evaluation grid.
// K is the complement-survival mix that orders supermodular-utility
// comparisons; it is nonnegative since F <= min(FX, FY).
struct KSheet {
  std::vector<double> xs, ys;
  std::vector<double> k;  // row-major, xs.size() * ys.size()

  double at(std::size_t i, std::size_t j) const { return k[i * ys.size() + j]; }
};

KSheet k_sheet(const BivariateStepCdf& cdf, const MergedGrid& grid);

// Individual condition families (each checks lhs <= rhs + tol on the
// {0} + merged-grid lattice; exact, see note above).
DominanceVerdict pointwise_cdf_dominance(const BivariateStepCdf& f1,
                                         const BivariateStepCdf& f2, double tol);
DominanceVerdict marginal_dominance_x(const BivariateStepCdf& f1,
                                      const BivariateStepCdf& f2, double tol);
DominanceVerdict marginal_dominance_y(const BivariateStepCdf& f1,
                                      const BivariateStepCdf& f2, double tol);
DominanceVerdict k_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol);

// f1 dominates f2 for increasing submodular utilities iff F1 <= F2
// everywhere.
DominanceVerdict check_first_order_submodular(const BivariateStepCdf& f1,
                                              const BivariateStepCdf& f2,
                                              double tol = kDefaultTolerance);

// f1 dominates f2 for increasing supermodular utilities iff both marginals
// and K are ordered. The witness names the first failing family in the
// order marginal-X, marginal-Y, K.
DominanceVerdict check_first_order_supermodular(const BivariateStepCdf& f1,
                                                const BivariateStepCdf& f2,
                                                double tol = kDefaultTolerance);

// All-hold conjunction used by the composite checkers; witness and margin
// come from the first failing / worst family.
DominanceVerdict combine_verdicts(const std::vector<DominanceVerdict>& parts, double tol);

}  // namespace bsdom
