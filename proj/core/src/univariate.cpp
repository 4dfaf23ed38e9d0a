#include "bsdom/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsdom {

namespace {

double eval_local(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

std::vector<double> merged_breakpoints(const PiecewisePolynomial& a,
                                       const PiecewisePolynomial& b) {
  std::vector<double> out;
  std::set_union(a.breakpoints().begin(), a.breakpoints().end(),
                 b.breakpoints().begin(), b.breakpoints().end(), std::back_inserter(out));
  return out;
}

}  // namespace

PiecewisePolynomial s_operator(const UnivariateStepCdf& f, int order) {
  if (order < 1) throw std::invalid_argument("dominance order must be at least 1");
  PiecewisePolynomial p = PiecewisePolynomial::from_step(f);
  for (int j = 1; j < order; ++j) p = p.antiderivative();
  return p;
}

DominanceVerdict sd_check(const UnivariateStepCdf& f, const UnivariateStepCdf& g,
                          int order, double tol) {
  const PiecewisePolynomial pf = s_operator(f, order);
  const PiecewisePolynomial pg = s_operator(g, order);
  const std::vector<double> bps = merged_breakpoints(pf, pg);

  DominanceVerdict v;
  v.tolerance = tol;
  v.approximate = order >= 4;

  double best = -std::numeric_limits<double>::infinity();
  double best_z = 0.0;
  double worst = std::numeric_limits<double>::infinity();

  const std::string family = "S_" + std::to_string(order);
  for (std::size_t m = 0; m + 1 < bps.size(); ++m) {
    const double a = bps[m];
    const double len = bps[m + 1] - a;
    std::vector<double> d = pf.coeffs_about(pf.piece_index(a), a);
    const std::vector<double> cg = pg.coeffs_about(pg.piece_index(a), a);
    if (d.size() < cg.size()) d.resize(cg.size(), 0.0);
    for (std::size_t i = 0; i < cg.size(); ++i) d[i] -= cg[i];

    std::vector<double> ts = {0.0, len};
    if (d.size() <= 3) {
      // Degree <= 2: the only interior extremum is the vertex.
      if (d.size() == 3 && d[2] != 0.0) {
        const double t_star = -d[1] / (2.0 * d[2]);
        if (t_star > 0.0 && t_star < len) ts.push_back(t_star);
      }
    } else {
      for (int s = 1; s <= 64; ++s) {
        ts.push_back(len * static_cast<double>(s) / 65.0);
      }
    }

    for (double t : ts) {
      const double val = eval_local(d, t);
      if (val > best) {
        best = val;
        best_z = a + t;
      }
      worst = std::min(worst, val);
    }
  }

  v.margin = best;
  v.holds = best <= tol;
  v.strict_somewhere = worst < -tol;
  if (!v.holds) v.witness = Witness{best_z, 0.0, family};
  return v;
}

}  // namespace bsdom
