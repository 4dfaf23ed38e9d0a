#include "bsdom/first_order.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace bsdom {

namespace {

// Largest axis index at or below each coordinate, -1 when below the axis.
std::vector<std::ptrdiff_t> floors_of(const std::vector<double>& coords,
                                      const std::vector<double>& axis) {
  std::vector<std::ptrdiff_t> out(coords.size());
  for (std::size_t m = 0; m < coords.size(); ++m) {
    const auto it = std::upper_bound(axis.begin(), axis.end(), coords[m]);
    out[m] = static_cast<std::ptrdiff_t>(it - axis.begin()) - 1;
  }
  return out;
}

std::vector<double> with_zero(const std::vector<double>& v) {
  if (!v.empty() && v.front() == 0.0) return v;
  std::vector<double> out;
  out.reserve(v.size() + 1);
  out.push_back(0.0);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Evaluation lattice: {0} + merged coordinates per axis, with floor maps
// into each source grid.
struct Lattice {
  std::vector<double> xs, ys;
  std::vector<std::ptrdiff_t> afx, afy, bfx, bfy;
};

Lattice make_lattice(const BivariateStepCdf& f1, const BivariateStepCdf& f2) {
  if (!(f1.frame() == f2.frame())) {
    throw std::invalid_argument("distributions compared on different frames");
  }
  const MergedGrid g = merge_grids(f1, f2);
  Lattice lat;
  lat.xs = with_zero(g.xs);
  lat.ys = with_zero(g.ys);
  lat.afx = floors_of(lat.xs, f1.xs());
  lat.afy = floors_of(lat.ys, f1.ys());
  lat.bfx = floors_of(lat.xs, f2.xs());
  lat.bfy = floors_of(lat.ys, f2.ys());
  return lat;
}

double marginal_at(const std::vector<double>& marg, std::ptrdiff_t idx) {
  return idx < 0 ? 0.0 : marg[static_cast<std::size_t>(idx)];
}

// Scans lhs - rhs over candidate points, producing the standard verdict.
class Scan {
 public:
  explicit Scan(double tol, std::string family)
      : tol_(tol), family_(std::move(family)) {}

  void visit(double x, double y, double diff) {
    if (diff > best_) {
      best_ = diff;
      at_ = {x, y, family_};
    }
    worst_ = std::min(worst_, diff);
  }

  DominanceVerdict finish() const {
    DominanceVerdict v;
    v.tolerance = tol_;
    v.margin = best_;
    v.holds = best_ <= tol_;
    v.strict_somewhere = worst_ < -tol_;
    if (!v.holds) v.witness = at_;
    return v;
  }

 private:
  double tol_;
  std::string family_;
  double best_ = -std::numeric_limits<double>::infinity();
  double worst_ = std::numeric_limits<double>::infinity();
  Witness at_;
};

}  // namespace

KSheet k_sheet(const BivariateStepCdf& cdf, const MergedGrid& grid) {
  KSheet sheet;
  sheet.xs = grid.xs;
  sheet.ys = grid.ys;
  const auto fx = floors_of(grid.xs, cdf.xs());
  const auto fy = floors_of(grid.ys, cdf.ys());
  sheet.k.resize(grid.xs.size() * grid.ys.size());
  for (std::size_t i = 0; i < grid.xs.size(); ++i) {
    for (std::size_t j = 0; j < grid.ys.size(); ++j) {
      sheet.k[i * grid.ys.size() + j] = marginal_at(cdf.fx(), fx[i]) +
                                        marginal_at(cdf.fy(), fy[j]) -
                                        cdf.f_or_zero(fx[i], fy[j]);
    }
  }
  return sheet;
}

DominanceVerdict pointwise_cdf_dominance(const BivariateStepCdf& f1,
                                         const BivariateStepCdf& f2, double tol) {
  const Lattice lat = make_lattice(f1, f2);
  Scan scan(tol, "F");
  for (std::size_t i = 0; i < lat.xs.size(); ++i) {
    for (std::size_t j = 0; j < lat.ys.size(); ++j) {
      scan.visit(lat.xs[i], lat.ys[j],
                 f1.f_or_zero(lat.afx[i], lat.afy[j]) -
                     f2.f_or_zero(lat.bfx[i], lat.bfy[j]));
    }
  }
  return scan.finish();
}

DominanceVerdict marginal_dominance_x(const BivariateStepCdf& f1,
                                      const BivariateStepCdf& f2, double tol) {
  const Lattice lat = make_lattice(f1, f2);
  Scan scan(tol, "FX");
  for (std::size_t i = 0; i < lat.xs.size(); ++i) {
    scan.visit(lat.xs[i], 0.0,
               marginal_at(f1.fx(), lat.afx[i]) - marginal_at(f2.fx(), lat.bfx[i]));
  }
  return scan.finish();
}

DominanceVerdict marginal_dominance_y(const BivariateStepCdf& f1,
                                      const BivariateStepCdf& f2, double tol) {
  const Lattice lat = make_lattice(f1, f2);
  Scan scan(tol, "FY");
  for (std::size_t j = 0; j < lat.ys.size(); ++j) {
    scan.visit(0.0, lat.ys[j],
               marginal_at(f1.fy(), lat.afy[j]) - marginal_at(f2.fy(), lat.bfy[j]));
  }
  return scan.finish();
}

DominanceVerdict k_dominance(const BivariateStepCdf& f1,
                             const BivariateStepCdf& f2, double tol) {
  const Lattice lat = make_lattice(f1, f2);
  Scan scan(tol, "K");
  for (std::size_t i = 0; i < lat.xs.size(); ++i) {
    for (std::size_t j = 0; j < lat.ys.size(); ++j) {
      const double k1 = marginal_at(f1.fx(), lat.afx[i]) +
                        marginal_at(f1.fy(), lat.afy[j]) -
                        f1.f_or_zero(lat.afx[i], lat.afy[j]);
      const double k2 = marginal_at(f2.fx(), lat.bfx[i]) +
                        marginal_at(f2.fy(), lat.bfy[j]) -
                        f2.f_or_zero(lat.bfx[i], lat.bfy[j]);
      scan.visit(lat.xs[i], lat.ys[j], k1 - k2);
    }
  }
  return scan.finish();
}

DominanceVerdict check_first_order_submodular(const BivariateStepCdf& f1,
                                              const BivariateStepCdf& f2, double tol) {
  return pointwise_cdf_dominance(f1, f2, tol);
}

DominanceVerdict check_first_order_supermodular(const BivariateStepCdf& f1,
                                                const BivariateStepCdf& f2, double tol) {
  return combine_verdicts({marginal_dominance_x(f1, f2, tol),
                           marginal_dominance_y(f1, f2, tol),
                           k_dominance(f1, f2, tol)},
                          tol);
}

DominanceVerdict combine_verdicts(const std::vector<DominanceVerdict>& parts, double tol) {
  if (parts.empty()) throw std::invalid_argument("no verdicts to combine");
  DominanceVerdict out;
  out.tolerance = tol;
  out.holds = true;
  out.margin = -std::numeric_limits<double>::infinity();
  for (const auto& p : parts) {
    out.holds = out.holds && p.holds;
    out.margin = std::max(out.margin, p.margin);
    out.strict_somewhere = out.strict_somewhere || p.strict_somewhere;
    out.approximate = out.approximate || p.approximate;
    if (!p.holds && !out.witness) out.witness = p.witness;
  }
  return out;
}

}  // namespace bsdom
