#include "bsdom/piecewise_poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsdom {

namespace {

double eval_local(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

}  // namespace

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints,
                                         std::vector<std::vector<double>> coeffs,
                                         bool continuous)
    : breakpoints_(std::move(breakpoints)), coeffs_(std::move(coeffs)), continuous_(continuous) {
  if (breakpoints_.size() < 2 || coeffs_.size() + 1 != breakpoints_.size()) {
    throw std::invalid_argument("piecewise polynomial needs one coefficient row per piece");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw std::invalid_argument("piecewise polynomial must cover [0,1]");
  }
  for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
    if (!(breakpoints_[k] > breakpoints_[k - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
  for (const auto& c : coeffs_) {
    if (c.empty()) throw std::invalid_argument("empty coefficient row");
  }
  if (continuous_) {
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) {
      const double left = eval_local(coeffs_[k], breakpoints_[k + 1] - breakpoints_[k]);
      const double right = coeffs_[k + 1][0];
      if (std::abs(left - right) > 1e-10) {
        throw std::invalid_argument("pieces disagree at a breakpoint of a continuous function");
      }
    }
  }
}

PiecewisePolynomial PiecewisePolynomial::from_step(const UnivariateStepCdf& f) {
  std::vector<double> bps;
  bps.reserve(f.xs().size() + 2);
  bps.push_back(0.0);
  for (double x : f.xs()) {
    if (x > 0.0 && x < 1.0) bps.push_back(x);
  }
  bps.push_back(1.0);

  std::vector<std::vector<double>> coeffs;
  coeffs.reserve(bps.size() - 1);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    coeffs.push_back({f.value_at(bps[k])});
  }
  return PiecewisePolynomial(std::move(bps), std::move(coeffs), false);
}

std::size_t PiecewisePolynomial::piece_index(double z) const {
  if (!(z >= -1e-12 && z <= 1.0 + 1e-12)) {
    throw std::invalid_argument("evaluation point outside [0,1]");
  }
  z = std::min(1.0, std::max(0.0, z));
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), z);
  const auto raw = static_cast<std::size_t>(it - breakpoints_.begin());
  return std::min(coeffs_.size() - 1, raw == 0 ? 0 : raw - 1);
}

double PiecewisePolynomial::eval(double z) const {
  const std::size_t k = piece_index(z);
  return eval_local(coeffs_[k], std::min(1.0, std::max(0.0, z)) - breakpoints_[k]);
}

PiecewisePolynomial PiecewisePolynomial::antiderivative() const {
  std::vector<std::vector<double>> out;
  out.reserve(coeffs_.size());
  double running = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const auto& c = coeffs_[k];
    std::vector<double> ic(c.size() + 1, 0.0);
    ic[0] = running;
    for (std::size_t i = 0; i < c.size(); ++i) ic[i + 1] = c[i] / static_cast<double>(i + 1);
    running = eval_local(ic, breakpoints_[k + 1] - breakpoints_[k]);
    out.push_back(std::move(ic));
  }
  return PiecewisePolynomial(breakpoints_, std::move(out), true);
}

std::size_t PiecewisePolynomial::max_degree() const {
  std::size_t d = 0;
  for (const auto& c : coeffs_) d = std::max(d, c.size() - 1);
  return d;
}

std::vector<double> PiecewisePolynomial::coeffs_about(std::size_t k, double at) const {
  // Taylor shift by repeated synthetic division: rewrites the local expansion
  // sum c_i (z - b_k)^i as sum out_i (z - at)^i.
  if (k >= coeffs_.size()) throw std::invalid_argument("piece index out of range");
  const double s = at - breakpoints_[k];
  std::vector<double> poly(coeffs_[k].begin(), coeffs_[k].end());
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j-- > i;) poly[j] += s * poly[j + 1];
  }
  return poly;
}

}  // namespace bsdom
