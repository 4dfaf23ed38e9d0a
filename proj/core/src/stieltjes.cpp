#include "bsdom/stieltjes.hpp"

#include <cmath>
#include <stdexcept>

namespace bsdom {

namespace {

void check_cuts(const std::vector<double>& cuts, const char* axis) {
  if (cuts.size() < 2 || cuts.front() != 0.0 || cuts.back() != 1.0) {
    throw std::invalid_argument(std::string("partition ") + axis +
                                " cuts must run from 0 to 1");
  }
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i] > cuts[i - 1])) {
      throw std::invalid_argument(std::string("partition ") + axis +
                                  " cuts must be strictly increasing");
    }
  }
}

double phi_at(const TestFunction& phi, const SamplePoint& p) { return phi(p.x, p.y); }

}  // namespace

Partition::Partition(std::vector<double> x_cuts, std::vector<double> y_cuts,
                     std::vector<SamplePoint> selections)
    : x_cuts_(std::move(x_cuts)), y_cuts_(std::move(y_cuts)),
      selections_(std::move(selections)) {
  check_cuts(x_cuts_, "x");
  check_cuts(y_cuts_, "y");
  const std::size_t nxb = x_cuts_.size() - 1;
  const std::size_t nyb = y_cuts_.size() - 1;
  if (selections_.size() != nxb * nyb) {
    throw std::invalid_argument("one selection point per block required");
  }
  for (std::size_t bi = 0; bi < nxb; ++bi) {
    for (std::size_t bj = 0; bj < nyb; ++bj) {
      const SamplePoint& s = selections_[bi * nyb + bj];
      if (!(s.x >= x_cuts_[bi] && s.x <= x_cuts_[bi + 1] && s.y >= y_cuts_[bj] &&
            s.y <= y_cuts_[bj + 1])) {
        throw std::invalid_argument("selection point outside its block");
      }
    }
  }
}

Partition Partition::upper_right(std::vector<double> x_cuts, std::vector<double> y_cuts) {
  check_cuts(x_cuts, "x");
  check_cuts(y_cuts, "y");
  const std::size_t nxb = x_cuts.size() - 1;
  const std::size_t nyb = y_cuts.size() - 1;
  std::vector<SamplePoint> sel;
  sel.reserve(nxb * nyb);
  for (std::size_t bi = 0; bi < nxb; ++bi) {
    for (std::size_t bj = 0; bj < nyb; ++bj) {
      sel.push_back({x_cuts[bi + 1], y_cuts[bj + 1]});
    }
  }
  return Partition(std::move(x_cuts), std::move(y_cuts), std::move(sel));
}

Partition Partition::uniform_upper_right(std::size_t nx_blocks, std::size_t ny_blocks) {
  if (nx_blocks == 0 || ny_blocks == 0) {
    throw std::invalid_argument("partition needs at least one block per axis");
  }
  std::vector<double> xc(nx_blocks + 1), yc(ny_blocks + 1);
  for (std::size_t i = 0; i <= nx_blocks; ++i) {
    xc[i] = i == nx_blocks ? 1.0 : static_cast<double>(i) / nx_blocks;
  }
  for (std::size_t j = 0; j <= ny_blocks; ++j) {
    yc[j] = j == ny_blocks ? 1.0 : static_cast<double>(j) / ny_blocks;
  }
  return upper_right(std::move(xc), std::move(yc));
}

double partition_sum(const TestFunction& phi, const BivariateStepCdf& cdf,
                     const Partition& p) {
  const auto& xc = p.x_cuts();
  const auto& yc = p.y_cuts();
  double total = 0.0;
  for (std::size_t bi = 0; bi + 1 < xc.size(); ++bi) {
    for (std::size_t bj = 0; bj + 1 < yc.size(); ++bj) {
      const double qv = eval_cdf(cdf, xc[bi + 1], yc[bj + 1]) -
                        eval_cdf(cdf, xc[bi + 1], yc[bj]) -
                        eval_cdf(cdf, xc[bi], yc[bj + 1]) +
                        eval_cdf(cdf, xc[bi], yc[bj]);
      total += phi_at(phi, p.selection(bi, bj)) * qv;
    }
  }
  return total;
}

double exact_expectation(const TestFunction& phi, const SampleSet& s) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.points().size(); ++i) {
    total += s.weights()[i] * phi(s.points()[i].x, s.points()[i].y);
  }
  return total;
}

double exact_expectation(const TestFunction& phi, const BivariateStepCdf& cdf) {
  double total = 0.0;
  for (const GridAtom& a : cdf.atoms()) {
    total += a.weight * phi(cdf.atom_x(a), cdf.atom_y(a));
  }
  return total;
}

double delta_interior(const TestFunction& phi, const Partition& p,
                      std::size_t i, std::size_t j) {
  if (i < 1 || i >= p.nx_blocks() || j < 1 || j >= p.ny_blocks()) {
    throw std::invalid_argument("interior delta index out of range");
  }
  // 1-based block labels; selection() is 0-based.
  return phi_at(phi, p.selection(i - 1, j - 1)) + phi_at(phi, p.selection(i, j)) -
         phi_at(phi, p.selection(i - 1, j)) - phi_at(phi, p.selection(i, j - 1));
}

double delta_border_x(const TestFunction& phi, const Partition& p, std::size_t i) {
  if (i < 1 || i >= p.nx_blocks()) {
    throw std::invalid_argument("border delta index out of range");
  }
  const std::size_t last = p.ny_blocks() - 1;
  return phi_at(phi, p.selection(i - 1, last)) - phi_at(phi, p.selection(i, last));
}

double delta_border_y(const TestFunction& phi, const Partition& p, std::size_t j) {
  if (j < 1 || j >= p.ny_blocks()) {
    throw std::invalid_argument("border delta index out of range");
  }
  const std::size_t last = p.nx_blocks() - 1;
  return phi_at(phi, p.selection(last, j - 1)) - phi_at(phi, p.selection(last, j));
}

SumDecomposition decompose_sum(const TestFunction& phi, const BivariateStepCdf& cdf,
                               const Partition& p) {
  const auto& xc = p.x_cuts();
  const auto& yc = p.y_cuts();
  const std::size_t nxb = p.nx_blocks();
  const std::size_t nyb = p.ny_blocks();

  SumDecomposition d;
  for (std::size_t i = 1; i < nxb; ++i) {
    for (std::size_t j = 1; j < nyb; ++j) {
      d.interior += eval_cdf(cdf, xc[i], yc[j]) * delta_interior(phi, p, i, j);
    }
  }
  for (std::size_t i = 1; i < nxb; ++i) {
    d.border_x += eval_cdf(cdf, xc[i], 1.0) * delta_border_x(phi, p, i);
  }
  for (std::size_t j = 1; j < nyb; ++j) {
    d.border_y += eval_cdf(cdf, 1.0, yc[j]) * delta_border_y(phi, p, j);
  }
  d.corner = phi_at(phi, p.selection(nxb - 1, nyb - 1));
  d.total = d.interior + d.border_x + d.border_y + d.corner;
  return d;
}

double supermodular_form(const TestFunction& phi, const BivariateStepCdf& cdf,
                         const Partition& p) {
  const auto& xc = p.x_cuts();
  const auto& yc = p.y_cuts();
  const std::size_t nxb = p.nx_blocks();
  const std::size_t nyb = p.ny_blocks();

  double total = phi_at(phi, p.selection(nxb - 1, nyb - 1));
  for (std::size_t i = 1; i < nxb; ++i) {
    for (std::size_t j = 1; j < nyb; ++j) {
      const double k = eval_cdf(cdf, xc[i], 1.0) + eval_cdf(cdf, 1.0, yc[j]) -
                       eval_cdf(cdf, xc[i], yc[j]);
      total -= k * delta_interior(phi, p, i, j);
    }
  }
  // First-row / first-column deltas pick up the marginal terms that the
  // interior regrouping moved into K.
  for (std::size_t i = 1; i < nxb; ++i) {
    const double first_row =
        phi_at(phi, p.selection(i - 1, 0)) - phi_at(phi, p.selection(i, 0));
    total += eval_cdf(cdf, xc[i], 1.0) * first_row;
  }
  for (std::size_t j = 1; j < nyb; ++j) {
    const double first_col =
        phi_at(phi, p.selection(0, j - 1)) - phi_at(phi, p.selection(0, j));
    total += eval_cdf(cdf, 1.0, yc[j]) * first_col;
  }
  return total;
}

TelescopePair telescope_check_x(const TestFunction& phi, const Partition& p,
                                std::size_t i) {
  TelescopePair t;
  t.direct = delta_border_x(phi, p, i);
  double sum = 0.0;
  for (std::size_t j = 1; j < p.ny_blocks(); ++j) sum += delta_interior(phi, p, i, j);
  const double first_row =
      phi_at(phi, p.selection(i - 1, 0)) - phi_at(phi, p.selection(i, 0));
  t.telescoped = first_row - sum;
  return t;
}

TelescopePair telescope_check_y(const TestFunction& phi, const Partition& p,
                                std::size_t j) {
  TelescopePair t;
  t.direct = delta_border_y(phi, p, j);
  double sum = 0.0;
  for (std::size_t i = 1; i < p.nx_blocks(); ++i) sum += delta_interior(phi, p, i, j);
  const double first_col =
      phi_at(phi, p.selection(0, j - 1)) - phi_at(phi, p.selection(0, j));
  t.telescoped = first_col - sum;
  return t;
}

}  // namespace bsdom
