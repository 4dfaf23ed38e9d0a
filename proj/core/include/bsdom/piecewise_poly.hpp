#pragma once

#include <cstddef>
#include <vector>

#include "bsdom/step_cdf.hpp"

namespace bsdom {

// Piecewise polynomial on [0,1]. Piece k lives on
// [breakpoints[k], breakpoints[k+1]] and stores coefficients in the local
// basis (z - breakpoints[k])^i, which keeps evaluation well conditioned.
// Discontinuous instances (step functions) take the right-hand value at
// interior breakpoints; at z = 1 the last piece's polynomial is used, so a
// step function with a jump exactly at 1 is represented by its left limit
// there (the jump at the endpoint has no effect on any integral on [0,1]).
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(std::vector<double> breakpoints,
                      std::vector<std::vector<double>> coeffs, bool continuous);

  static PiecewisePolynomial from_step(const UnivariateStepCdf& f);

  double eval(double z) const;

  // Exact antiderivative vanishing at 0; always continuous.
  PiecewisePolynomial antiderivative() const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::size_t pieces() const { return coeffs_.size(); }
  const std::vector<double>& piece_coeffs(std::size_t k) const { return coeffs_[k]; }
  bool continuous() const { return continuous_; }
  std::size_t max_degree() const;

  // Coefficients of piece k re-expanded around `at` (Taylor shift); used to
  // subtract pieces of two instances on a merged breakpoint set.
  std::vector<double> coeffs_about(std::size_t k, double at) const;

  // Piece index whose closed interval contains z (last piece for z = 1).
  std::size_t piece_index(double z) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> coeffs_;
  bool continuous_ = false;
};

}  // namespace bsdom
