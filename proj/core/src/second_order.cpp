#include "bsdom/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bsdom/first_order.hpp"

namespace bsdom {

namespace {

std::vector<std::ptrdiff_t> floors_of(const std::vector<double>& coords,
                                      const std::vector<double>& axis) {
  std::vector<std::ptrdiff_t> out(coords.size());
  for (std::size_t m = 0; m < coords.size(); ++m) {
    const auto it = std::upper_bound(axis.begin(), axis.end(), coords[m]);
    out[m] = static_cast<std::ptrdiff_t>(it - axis.begin()) - 1;
  }
  return out;
}

// Sheet axis: {0} + coords + {1}. Must refine the cdf's own grid for the
// cell-wise constancy of the integrand to hold; merged grids always do.
std::vector<double> sheet_axis(const std::vector<double>& coords) {
  std::vector<double> out;
  out.reserve(coords.size() + 2);
  if (coords.empty() || coords.front() != 0.0) out.push_back(0.0);
  out.insert(out.end(), coords.begin(), coords.end());
  if (out.back() != 1.0) out.push_back(1.0);
  return out;
}

struct Scan {
  Scan(double t, std::string f) : tol(t), family(std::move(f)) {}

  double tol;
  std::string family;
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  Witness at;

  void visit(double x, double y, double diff) {
    if (diff > best) {
      best = diff;
      at = {x, y, family};
    }
    worst = std::min(worst, diff);
  }

  DominanceVerdict finish() const {
    DominanceVerdict v;
    v.tolerance = tol;
    v.margin = best;
    v.holds = best <= tol;
    v.strict_somewhere = worst < -tol;
    if (!v.holds) v.witness = at;
    return v;
  }
};

double marginal_at(const std::vector<double>& marg, std::ptrdiff_t idx) {
  return idx < 0 ? 0.0 : marg[static_cast<std::size_t>(idx)];
}

enum class Integrand { F, K };

BilinearSheet integral_sheet(const BivariateStepCdf& cdf, const MergedGrid& grid,
                             Integrand which) {
  const std::vector<double> xs = sheet_axis(grid.xs);
  const std::vector<double> ys = sheet_axis(grid.ys);
  const auto fx = floors_of(xs, cdf.xs());
  const auto fy = floors_of(ys, cdf.ys());
  std::vector<double> c((xs.size() - 1) * (ys.size() - 1));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
      const double f = cdf.f_or_zero(fx[i], fy[j]);
      const double val = which == Integrand::F
                             ? f
                             : marginal_at(cdf.fx(), fx[i]) +
                                   marginal_at(cdf.fy(), fy[j]) - f;
      c[i * (ys.size() - 1) + j] = val;
    }
  }
  return BilinearSheet(xs, ys, std::move(c));
}

std::vector<double> merged_breakpoints(const PiecewisePolynomial& a,
                                       const PiecewisePolynomial& b) {
  std::vector<double> out;
  std::set_union(a.breakpoints().begin(), a.breakpoints().end(),
                 b.breakpoints().begin(), b.breakpoints().end(), std::back_inserter(out));
  return out;
}

// HX1 - HX2 is continuous piecewise linear, so its extrema over [0,1] sit at
// breakpoints of either part.
DominanceVerdict linear_diff_verdict(const PiecewisePolynomial& p1,
                                     const PiecewisePolynomial& p2, double tol,
                                     const std::string& family, bool on_x) {
  Scan scan(tol, family);
  for (double z : merged_breakpoints(p1, p2)) {
    const double diff = p1.eval(z) - p2.eval(z);
    scan.visit(on_x ? z : 0.0, on_x ? 0.0 : z, diff);
  }
  return scan.finish();
}

DominanceVerdict sheet_dominance(const BivariateStepCdf& f1, const BivariateStepCdf& f2,
                                 double tol, Integrand which, const std::string& family) {
  if (!(f1.frame() == f2.frame())) {
    throw std::invalid_argument("distributions compared on different frames");
  }
  const MergedGrid grid = merge_grids(f1, f2);
  const BilinearSheet s1 = integral_sheet(f1, grid, which);
  const BilinearSheet s2 = integral_sheet(f2, grid, which);
  Scan scan(tol, family);
  for (std::size_t i = 0; i < s1.nx(); ++i) {
    for (std::size_t j = 0; j < s1.ny(); ++j) {
      scan.visit(s1.xs()[i], s1.ys()[j], s1.corner(i, j) - s2.corner(i, j));
    }
  }
  return scan.finish();
}

}  // namespace

BilinearSheet::BilinearSheet(std::vector<double> xs, std::vector<double> ys,
                             std::vector<double> cell_integrand)
    : xs_(std::move(xs)), ys_(std::move(ys)), c_(std::move(cell_integrand)) {
  if (xs_.size() < 2 || ys_.size() < 2) {
    throw std::invalid_argument("sheet needs at least one cell per axis");
  }
  if (xs_.front() != 0.0 || xs_.back() != 1.0 || ys_.front() != 0.0 || ys_.back() != 1.0) {
    throw std::invalid_argument("sheet axes must span [0,1]");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1])) throw std::invalid_argument("sheet x axis not increasing");
  }
  for (std::size_t j = 1; j < ys_.size(); ++j) {
    if (!(ys_[j] > ys_[j - 1])) throw std::invalid_argument("sheet y axis not increasing");
  }
  if (c_.size() != (xs_.size() - 1) * (ys_.size() - 1)) {
    throw std::invalid_argument("cell integrand size mismatch");
  }
  const std::size_t ny = ys_.size();
  v_.assign(xs_.size() * ny, 0.0);
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const double dx = xs_[i + 1] - xs_[i];
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double dy = ys_[j + 1] - ys_[j];
      v_[(i + 1) * ny + (j + 1)] = v_[(i + 1) * ny + j] + v_[i * ny + (j + 1)] -
                                   v_[i * ny + j] +
                                   c_[i * (ny - 1) + j] * dx * dy;
    }
  }
}

BilinearSheet::CellCoeffs BilinearSheet::cell(std::size_t i, std::size_t j) const {
  if (i + 1 >= xs_.size() || j + 1 >= ys_.size()) {
    throw std::invalid_argument("cell index out of range");
  }
  CellCoeffs cc;
  cc.value = corner(i, j);
  cc.x_slope = (corner(i + 1, j) - corner(i, j)) / (xs_[i + 1] - xs_[i]);
  cc.y_slope = (corner(i, j + 1) - corner(i, j)) / (ys_[j + 1] - ys_[j]);
  cc.cross = cell_integrand(i, j);
  return cc;
}

double BilinearSheet::eval(double x, double y) const {
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12 && y >= -1e-12 && y <= 1.0 + 1e-12)) {
    throw std::invalid_argument("evaluation point outside the unit square");
  }
  x = std::min(1.0, std::max(0.0, x));
  y = std::min(1.0, std::max(0.0, y));
  const auto cell_of = [](const std::vector<double>& axis, double z) {
    const auto it = std::upper_bound(axis.begin(), axis.end(), z);
    const auto raw = static_cast<std::size_t>(it - axis.begin());
    return std::min(axis.size() - 2, raw == 0 ? 0 : raw - 1);
  };
  const std::size_t i = cell_of(xs_, x);
  const std::size_t j = cell_of(ys_, y);
  const CellCoeffs cc = cell(i, j);
  const double dx = x - xs_[i];
  const double dy = y - ys_[j];
  return cc.value + cc.x_slope * dx + cc.y_slope * dy + cc.cross * dx * dy;
}

BilinearSheet h_surface(const BivariateStepCdf& cdf, const MergedGrid& grid) {
  return integral_sheet(cdf, grid, Integrand::F);
}

BilinearSheet l_surface(const BivariateStepCdf& cdf, const MergedGrid& grid) {
  return integral_sheet(cdf, grid, Integrand::K);
}

PiecewisePolynomial h_marginal_x(const BivariateStepCdf& cdf) {
  return PiecewisePolynomial::from_step(marginal_x(cdf)).antiderivative();
}

PiecewisePolynomial h_marginal_y(const BivariateStepCdf& cdf) {
  return PiecewisePolynomial::from_step(marginal_y(cdf)).antiderivative();
}

DominanceVerdict h_marginal_dominance_x(const BivariateStepCdf& f1,
                                        const BivariateStepCdf& f2, double tol) {
  return linear_diff_verdict(h_marginal_x(f1), h_marginal_x(f2), tol, "HX", true);
}

DominanceVerdict h_marginal_dominance_y(const BivariateStepCdf& f1,
                                        const BivariateStepCdf& f2, double tol) {
  return linear_diff_verdict(h_marginal_y(f1), h_marginal_y(f2), tol, "HY", false);
}

DominanceVerdict h_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol) {
  return sheet_dominance(f1, f2, tol, Integrand::F, "H");
}

DominanceVerdict l_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol) {
  return sheet_dominance(f1, f2, tol, Integrand::K, "L");
}

DominanceVerdict check_second_order_submodular(const BivariateStepCdf& f1,
                                               const BivariateStepCdf& f2, double tol) {
  return combine_verdicts({h_marginal_dominance_x(f1, f2, tol),
                           h_marginal_dominance_y(f1, f2, tol),
                           h_dominance(f1, f2, tol)},
                          tol);
}

DominanceVerdict check_second_order_supermodular(const BivariateStepCdf& f1,
                                                 const BivariateStepCdf& f2, double tol) {
  return combine_verdicts({h_marginal_dominance_x(f1, f2, tol),
                           h_marginal_dominance_y(f1, f2, tol),
                           l_dominance(f1, f2, tol)},
                          tol);
}

void validate_sheet_invariants(const BilinearSheet& sheet) {
  const std::size_t nx = sheet.nx();
  const std::size_t ny = sheet.ny();
  for (std::size_t j = 0; j < ny; ++j) {
    if (sheet.corner(0, j) != 0.0) throw std::logic_error("sheet nonzero on x = 0");
  }
  for (std::size_t i = 0; i < nx; ++i) {
    if (sheet.corner(i, 0) != 0.0) throw std::logic_error("sheet nonzero on y = 0");
  }
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      const double dx = sheet.xs()[i + 1] - sheet.xs()[i];
      const double dy = sheet.ys()[j + 1] - sheet.ys()[j];
      const double qv = sheet.corner(i + 1, j + 1) - sheet.corner(i + 1, j) -
                        sheet.corner(i, j + 1) + sheet.corner(i, j);
      if (std::abs(qv - sheet.cell_integrand(i, j) * dx * dy) > 1e-12) {
        throw std::logic_error("sheet cell volume disagrees with its integrand");
      }
    }
  }
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (i + 1 < nx && sheet.corner(i + 1, j) < sheet.corner(i, j) - 1e-12) {
        throw std::logic_error("sheet corners decrease along x");
      }
      if (j + 1 < ny && sheet.corner(i, j + 1) < sheet.corner(i, j) - 1e-12) {
        throw std::logic_error("sheet corners decrease along y");
      }
    }
  }
}

}  // namespace bsdom
