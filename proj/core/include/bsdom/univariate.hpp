#pragma once

#include "bsdom/piecewise_poly.hpp"
#include "bsdom/step_cdf.hpp"
#include "bsdom/verdict.hpp"

namespace bsdom {

// Iterated-integral operator: order 1 is the step CDF itself, and each
// further order integrates the previous one from 0. The result for order j
// is piecewise polynomial of degree j-1, continuous for j >= 2, built from
// exact per-piece antiderivatives (no quadrature).
PiecewisePolynomial s_operator(const UnivariateStepCdf& f, int order);

// Order-j stochastic dominance of f over g: S_j(z, f) <= S_j(z, g) for all
// z in [0,1]. Both inputs must live on the same frame. For j = 1 the
// difference is piecewise constant and for j <= 3 piecewise quadratic, so
// the supremum is located exactly (piece endpoints plus the closed-form
// critical point); for j >= 4 each piece is sampled densely (64 interior
// points plus endpoints) and the verdict is flagged approximate.
DominanceVerdict sd_check(const UnivariateStepCdf& f, const UnivariateStepCdf& g,
                          int order, double tol = kDefaultTolerance);

}  // namespace bsdom
