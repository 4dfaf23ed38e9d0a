#include "bsdom/step_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsdom {

namespace {

constexpr double kDomainSlack = 1e-12;

// Largest index with coords[i] <= z, or -1.
std::ptrdiff_t floor_index(const std::vector<double>& coords, double z) {
  auto it = std::upper_bound(coords.begin(), coords.end(), z);
  return static_cast<std::ptrdiff_t>(it - coords.begin()) - 1;
}

double clamp_unit(double v, const char* what) {
  if (!(v >= -kDomainSlack && v <= 1.0 + kDomainSlack)) {
    throw std::invalid_argument(std::string(what) + " outside the unit interval");
  }
  return std::min(1.0, std::max(0.0, v));
}

}  // namespace

UnivariateStepCdf::UnivariateStepCdf(std::vector<double> xs, std::vector<double> values)
    : xs_(std::move(xs)), values_(std::move(values)) {
  if (xs_.empty() || xs_.size() != values_.size()) {
    throw std::invalid_argument("step cdf needs matching nonempty xs/values");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] < 0.0 || xs_[i] > 1.0) {
      throw std::invalid_argument("step cdf coordinates must lie in [0,1]");
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw std::invalid_argument("step cdf coordinates must be strictly increasing");
    }
    if (i > 0 && values_[i] < values_[i - 1] - 1e-12) {
      throw std::invalid_argument("step cdf values must be nondecreasing");
    }
  }
  if (std::abs(values_.back() - 1.0) > 1e-12) {
    throw std::invalid_argument("step cdf terminal value must be 1");
  }
}

double UnivariateStepCdf::value_at(double z) const {
  z = clamp_unit(z, "evaluation point");
  const std::ptrdiff_t i = floor_index(xs_, z);
  return i < 0 ? 0.0 : values_[static_cast<std::size_t>(i)];
}

double BivariateStepCdf::f_or_zero(std::ptrdiff_t i, std::ptrdiff_t j) const {
  if (i < 0 || j < 0) return 0.0;
  return f(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

BivariateStepCdf build_cdf(const SampleSet& s, const CommonFrame& frame) {
  BivariateStepCdf cdf;
  cdf.frame_ = frame;

  const std::size_t n = s.size();
  std::vector<double> mx(n), my(n);
  for (std::size_t k = 0; k < n; ++k) {
    const SamplePoint& p = s.points()[k];
    if (!frame.contains(p)) {
      throw std::invalid_argument("sample point outside the common frame");
    }
    mx[k] = clamp_unit(frame.map_x(p.x), "mapped x");
    my[k] = clamp_unit(frame.map_y(p.y), "mapped y");
  }

  auto grid_axis = [](std::vector<double> coords) {
    coords.push_back(1.0);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    return coords;
  };
  cdf.xs_ = grid_axis(mx);
  cdf.ys_ = grid_axis(my);

  const std::size_t nx = cdf.xs_.size(), ny = cdf.ys_.size();
  std::vector<double> cell(nx * ny, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto ix = static_cast<std::size_t>(
        std::lower_bound(cdf.xs_.begin(), cdf.xs_.end(), mx[k]) - cdf.xs_.begin());
    const auto iy = static_cast<std::size_t>(
        std::lower_bound(cdf.ys_.begin(), cdf.ys_.end(), my[k]) - cdf.ys_.begin());
    cell[ix * ny + iy] += s.weights()[k];
  }

  cdf.atoms_.reserve(n);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (cell[i * ny + j] > 0.0) {
        cdf.atoms_.push_back(GridAtom{i, j, cell[i * ny + j]});
      }
    }
  }

  // Inclusive 2D prefix sum turns the weight grid into the CDF table.
  cdf.f_ = std::move(cell);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      double v = cdf.f_[i * ny + j];
      if (i > 0) v += cdf.f_[(i - 1) * ny + j];
      if (j > 0) v += cdf.f_[i * ny + (j - 1)];
      if (i > 0 && j > 0) v -= cdf.f_[(i - 1) * ny + (j - 1)];
      cdf.f_[i * ny + j] = v;
    }
  }

  cdf.fx_.resize(nx);
  for (std::size_t i = 0; i < nx; ++i) cdf.fx_[i] = cdf.f_[i * ny + (ny - 1)];
  cdf.fy_.assign(cdf.f_.end() - static_cast<std::ptrdiff_t>(ny), cdf.f_.end());
  return cdf;
}

double eval_cdf(const BivariateStepCdf& cdf, double s, double t) {
  s = clamp_unit(s, "evaluation x");
  t = clamp_unit(t, "evaluation y");
  return cdf.f_or_zero(floor_index(cdf.xs(), s), floor_index(cdf.ys(), t));
}

double quasi_volume(const BivariateStepCdf& cdf, std::ptrdiff_t i_lo,
                    std::ptrdiff_t i_hi, std::ptrdiff_t j_lo, std::ptrdiff_t j_hi) {
  const auto nx = static_cast<std::ptrdiff_t>(cdf.nx());
  const auto ny = static_cast<std::ptrdiff_t>(cdf.ny());
  if (i_lo < -1 || j_lo < -1 || i_hi >= nx || j_hi >= ny || i_lo >= i_hi || j_lo >= j_hi) {
    throw std::invalid_argument("quasi_volume indices inverted or out of range");
  }
  return cdf.f_or_zero(i_hi, j_hi) + cdf.f_or_zero(i_lo, j_lo) -
         cdf.f_or_zero(i_hi, j_lo) - cdf.f_or_zero(i_lo, j_hi);
}

UnivariateStepCdf marginal_x(const BivariateStepCdf& cdf) {
  return UnivariateStepCdf(cdf.xs(), cdf.fx());
}

UnivariateStepCdf marginal_y(const BivariateStepCdf& cdf) {
  return UnivariateStepCdf(cdf.ys(), cdf.fy());
}

namespace {

std::vector<double> sorted_union(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::size_t> positions_in(const std::vector<double>& merged,
                                      const std::vector<double>& source) {
  std::vector<std::size_t> pos(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    const auto it = std::lower_bound(merged.begin(), merged.end(), source[i]);
    pos[i] = static_cast<std::size_t>(it - merged.begin());
  }
  return pos;
}

std::vector<std::ptrdiff_t> floor_map(const std::vector<double>& merged,
                                      const std::vector<double>& source) {
  std::vector<std::ptrdiff_t> fl(merged.size());
  std::ptrdiff_t i = -1;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    while (i + 1 < static_cast<std::ptrdiff_t>(source.size()) &&
           source[static_cast<std::size_t>(i + 1)] <= merged[k]) {
      ++i;
    }
    fl[k] = i;
  }
  return fl;
}

MergedGrid grid_of(std::vector<double> xs, std::vector<double> ys,
                   const BivariateStepCdf& a, const BivariateStepCdf& b) {
  MergedGrid g;
  g.xs = std::move(xs);
  g.ys = std::move(ys);
  g.a_x = positions_in(g.xs, a.xs());
  g.a_y = positions_in(g.ys, a.ys());
  g.b_x = positions_in(g.xs, b.xs());
  g.b_y = positions_in(g.ys, b.ys());
  g.a_floor_x = floor_map(g.xs, a.xs());
  g.a_floor_y = floor_map(g.ys, a.ys());
  g.b_floor_x = floor_map(g.xs, b.xs());
  g.b_floor_y = floor_map(g.ys, b.ys());
  return g;
}

}  // namespace

MergedGrid merge_grids(const BivariateStepCdf& a, const BivariateStepCdf& b) {
  return grid_of(sorted_union(a.xs(), b.xs()), sorted_union(a.ys(), b.ys()), a, b);
}

MergedGrid single_grid(const BivariateStepCdf& a) { return merge_grids(a, a); }

MergedGrid grid_from_coordinates(std::vector<double> xs, std::vector<double> ys,
                                 const BivariateStepCdf& a, const BivariateStepCdf& b) {
  auto check_axis = [](const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("grid axis must be nonempty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0.0 || v[i] > 1.0) throw std::invalid_argument("grid coordinate outside [0,1]");
      if (i > 0 && !(v[i] > v[i - 1])) {
        throw std::invalid_argument("grid coordinates must be strictly increasing");
      }
    }
  };
  check_axis(xs);
  check_axis(ys);
  return grid_of(std::move(xs), std::move(ys), a, b);
}

void validate_cdf_invariants(const BivariateStepCdf& cdf) {
  const std::size_t nx = cdf.nx(), ny = cdf.ny();
  auto fail = [](const char* what) { throw std::logic_error(what); };

  if (cdf.xs().back() != 1.0 || cdf.ys().back() != 1.0) fail("grid must end at 1");
  if (std::abs(cdf.f(nx - 1, ny - 1) - 1.0) > 1e-12) fail("terminal CDF value must be 1");

  for (std::size_t i = 0; i < nx; ++i) {
    if (cdf.fx()[i] != cdf.f(i, ny - 1)) fail("marginal-x row mismatch");
  }
  for (std::size_t j = 0; j < ny; ++j) {
    if (cdf.fy()[j] != cdf.f(nx - 1, j)) fail("marginal-y column mismatch");
  }

  double mass = 0.0;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double qv = quasi_volume(cdf, static_cast<std::ptrdiff_t>(i) - 1,
                                     static_cast<std::ptrdiff_t>(i),
                                     static_cast<std::ptrdiff_t>(j) - 1,
                                     static_cast<std::ptrdiff_t>(j));
      if (qv < -1e-12) fail("negative elementary quasi-volume");
      mass += qv;
    }
  }
  if (std::abs(mass - 1.0) > 1e-10) fail("elementary quasi-volumes must sum to 1");

  double atom_mass = 0.0;
  for (const GridAtom& a : cdf.atoms()) {
    const double qv = quasi_volume(cdf, static_cast<std::ptrdiff_t>(a.ix) - 1,
                                   static_cast<std::ptrdiff_t>(a.ix),
                                   static_cast<std::ptrdiff_t>(a.iy) - 1,
                                   static_cast<std::ptrdiff_t>(a.iy));
    if (std::abs(qv - a.weight) > 1e-12) fail("atom weight not reconstructed by quasi-volume");
    atom_mass += a.weight;
  }
  if (std::abs(atom_mass - 1.0) > 1e-12) fail("atom weights must sum to 1");
}

}  // namespace bsdom
