#include "bsdom/test_functions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "bsdom/io.hpp"

namespace bsdom {

namespace {

using Field = TestFunction::Field;
using PartialTable = std::array<std::array<Field, 5>, 5>;

Field zero_field() {
  return [](double, double) { return 0.0; };
}

PartialTable zero_table() {
  PartialTable t;
  for (auto& row : t) row.fill(zero_field());
  return t;
}

// Falling factorial a (a-1) ... (a-m+1); 1 for m = 0.
double ff(double a, int m) {
  double out = 1.0;
  for (int k = 0; k < m; ++k) out *= a - static_cast<double>(k);
  return out;
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

std::string_view to_string(UtilityClass c) {
  switch (c) {
    case UtilityClass::MMinus: return "M-";
    case UtilityClass::MPlus: return "M+";
    case UtilityClass::MMinusMinus: return "M--";
    case UtilityClass::MPlusPlus: return "M++";
    case UtilityClass::None: return "none";
  }
  return "none";
}

TestFunction::TestFunction(std::string descriptor, UtilityClass tag, bool increasing,
                           bool concave_each_arg, PartialTable partials)
    : descriptor_(std::move(descriptor)),
      tag_(tag),
      increasing_(increasing),
      concave_each_arg_(concave_each_arg),
      partials_(std::move(partials)) {
  for (int dx = 0; dx <= 4; ++dx) {
    for (int dy = 0; dx + dy <= 4; ++dy) {
      if (!partials_[dx][dy]) {
        throw std::invalid_argument("missing partial derivative field");
      }
    }
  }
}

double TestFunction::partial(int dx, int dy, double x, double y) const {
  if (dx < 0 || dy < 0 || dx + dy > 4) {
    throw std::invalid_argument("partial order outside the stored table");
  }
  return partials_[dx][dy](x, y);
}

TestFunction cobb_douglas(double a, double b) {
  if (!(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0)) {
    throw std::invalid_argument("cobb_douglas exponents must lie in (0,1]");
  }
  PartialTable t = zero_table();
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; m + n <= 4; ++n) {
      const double coef = ff(a, m) * ff(b, n);
      t[m][n] = [coef, a, b, m, n](double x, double y) {
        return coef * std::pow(x, a - m) * std::pow(y, b - n);
      };
    }
  }
  // Declared class is MPlusPlus across the whole parameter range: the sign
  // table holds weakly at a = b = 1 (it vanishes identically there), which
  // keeps cone combinations of different parameter choices well typed.
  return TestFunction("cobb_douglas:" + fmt(a) + "," + fmt(b),
                      UtilityClass::MPlusPlus, true, true, std::move(t));
}

TestFunction modular_complement(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("modular_complement weight must lie in [0,1]");
  }
  PartialTable t = zero_table();
  t[0][0] = [lambda](double x, double y) { return x + y - lambda * x * y; };
  t[1][0] = [lambda](double, double y) { return 1.0 - lambda * y; };
  t[0][1] = [lambda](double x, double) { return 1.0 - lambda * x; };
  t[1][1] = [lambda](double, double) { return -lambda; };
  return TestFunction("modular_complement:" + fmt(lambda), UtilityClass::MMinus,
                      true, true, std::move(t));
}

TestFunction neg_complement_power(double p, double q) {
  if (!(p >= 1.0 && q >= 1.0)) {
    throw std::invalid_argument("neg_complement_power exponents must be >= 1");
  }
  PartialTable t = zero_table();
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; m + n <= 4; ++n) {
      const double sign = ((m + n) % 2 == 0) ? -1.0 : 1.0;
      const double coef = sign * ff(p, m) * ff(q, n);
      t[m][n] = [coef, p, q, m, n](double x, double y) {
        return coef * std::pow(1.0 - x, p - m) * std::pow(1.0 - y, q - n);
      };
    }
  }
  // MMinusMinus across the range; weak at p = q = 1 where the table is zero.
  return TestFunction("neg_complement_power:" + fmt(p) + "," + fmt(q),
                      UtilityClass::MMinusMinus, true, true, std::move(t));
}

TestFunction constant_function(double c) {
  if (!std::isfinite(c)) throw std::invalid_argument("constant must be finite");
  PartialTable t = zero_table();
  t[0][0] = [c](double, double) { return c; };
  return TestFunction("constant:" + fmt(c), UtilityClass::None, true, true,
                      std::move(t));
}

TestFunction cone_combine(std::span<const TestFunction> members,
                          std::span<const double> weights) {
  if (members.empty() || members.size() != weights.size()) {
    throw std::invalid_argument("cone needs one weight per member");
  }
  bool any_positive = false;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("cone weights must be finite and nonnegative");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw std::invalid_argument("cone weights are all zero");
  const UtilityClass tag = members.front().tag();
  bool increasing = true;
  bool concave = true;
  for (const auto& m : members) {
    if (m.tag() != tag) {
      throw std::invalid_argument("cone members must share a class tag");
    }
    increasing = increasing && m.increasing();
    concave = concave && m.concave_each_arg();
  }

  auto shared = std::make_shared<std::pair<std::vector<TestFunction>, std::vector<double>>>(
      std::vector<TestFunction>(members.begin(), members.end()),
      std::vector<double>(weights.begin(), weights.end()));

  PartialTable t = zero_table();
  for (int m = 0; m <= 4; ++m) {
    for (int n = 0; m + n <= 4; ++n) {
      t[m][n] = [shared, m, n](double x, double y) {
        double acc = 0.0;
        for (std::size_t i = 0; i < shared->first.size(); ++i) {
          acc += shared->second[i] * shared->first[i].partial(m, n, x, y);
        }
        return acc;
      };
    }
  }

  std::string desc = "cone[";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) desc += " + ";
    desc += fmt(weights[i]) + "*" + members[i].descriptor();
  }
  desc += "]";
  return TestFunction(std::move(desc), tag, increasing, concave, std::move(t));
}

namespace {

// Central-difference estimates of the signed partials from the evaluator
// alone (no use of the stored derivative fields).
struct Stencil {
  double ex, ey, exx, eyy, exy, exxy, exyy, exxyy;
};

Stencil estimate(const TestFunction& f, double x, double y, double h) {
  const auto v = [&](int i, int j) { return f(x + i * h, y + j * h); };
  Stencil s;
  s.ex = (v(1, 0) - v(-1, 0)) / (2 * h);
  s.ey = (v(0, 1) - v(0, -1)) / (2 * h);
  s.exx = (v(1, 0) - 2 * v(0, 0) + v(-1, 0)) / (h * h);
  s.eyy = (v(0, 1) - 2 * v(0, 0) + v(0, -1)) / (h * h);
  s.exy = (v(1, 1) - v(1, -1) - v(-1, 1) + v(-1, -1)) / (4 * h * h);
  s.exxy = ((v(1, 1) - 2 * v(0, 1) + v(-1, 1)) - (v(1, -1) - 2 * v(0, -1) + v(-1, -1))) /
           (2 * h * h * h);
  s.exyy = ((v(1, 1) - 2 * v(1, 0) + v(1, -1)) - (v(-1, 1) - 2 * v(-1, 0) + v(-1, -1))) /
           (2 * h * h * h);
  const double wx[3] = {1.0, -2.0, 1.0};
  double acc = 0.0;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) acc += wx[i + 1] * wx[j + 1] * v(i, j);
  }
  s.exxyy = acc / (h * h * h * h);
  return s;
}

}  // namespace

Classification classify(const TestFunction& f, int grid_n, double h, double sign_tol) {
  if (grid_n < 2) throw std::invalid_argument("classification grid too small");
  if (!(h > 0.0 && h < 0.125)) throw std::invalid_argument("step must lie in (0, 1/8)");
  if (!(sign_tol > 0.0)) throw std::invalid_argument("sign tolerance must be positive");

  Classification c;
  c.increasing = true;
  c.concave_each_arg = true;
  c.m_minus = true;
  c.m_plus = true;
  c.m_minus_minus = true;
  c.m_plus_plus = true;
  bool act_xy = false;
  bool act_table = false;

  const double lo = 2 * h;
  const double span = 1.0 - 4 * h;
  for (int ix = 0; ix < grid_n; ++ix) {
    const double x = lo + span * ix / (grid_n - 1);
    for (int iy = 0; iy < grid_n; ++iy) {
      const double y = lo + span * iy / (grid_n - 1);
      const Stencil s = estimate(f, x, y, h);

      c.increasing = c.increasing && s.ex >= -sign_tol && s.ey >= -sign_tol;
      c.concave_each_arg = c.concave_each_arg && s.exx <= sign_tol && s.eyy <= sign_tol;
      c.m_minus = c.m_minus && s.exy <= sign_tol;
      c.m_plus = c.m_plus && s.exy >= -sign_tol;

      const bool own_concave = s.exx <= sign_tol && s.eyy <= sign_tol;
      c.m_minus_minus = c.m_minus_minus && s.exy <= sign_tol && own_concave &&
                        s.exxy >= -sign_tol && s.exyy >= -sign_tol &&
                        s.exxyy <= sign_tol;
      c.m_plus_plus = c.m_plus_plus && s.exy >= -sign_tol && own_concave &&
                      s.exxy <= sign_tol && s.exyy <= sign_tol &&
                      s.exxyy >= -sign_tol;

      act_xy = act_xy || std::abs(s.exy) > sign_tol;
      act_table = act_table || std::abs(s.exx) > sign_tol || std::abs(s.eyy) > sign_tol ||
                  std::abs(s.exxy) > sign_tol || std::abs(s.exyy) > sign_tol ||
                  std::abs(s.exxyy) > sign_tol;
    }
  }

  // Doubled classes need sign evidence from their distinguishing partials;
  // a vanishing second-stage table keeps the plain class.
  if (c.m_minus_minus && act_table) {
    c.tag = UtilityClass::MMinusMinus;
  } else if (c.m_plus_plus && act_table) {
    c.tag = UtilityClass::MPlusPlus;
  } else if (c.m_minus && act_xy) {
    c.tag = UtilityClass::MMinus;
  } else if (c.m_plus && act_xy) {
    c.tag = UtilityClass::MPlus;
  } else if (c.m_minus) {
    c.tag = UtilityClass::MMinus;
  } else if (c.m_plus) {
    c.tag = UtilityClass::MPlus;
  } else {
    c.tag = UtilityClass::None;
  }
  return c;
}

namespace {

std::vector<double> parse_params(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string piece(text.substr(pos, comma - pos));
    try {
      std::size_t used = 0;
      const double v = std::stod(piece, &used);
      while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) {
        ++used;
      }
      if (used != piece.size()) throw std::invalid_argument(piece);
      out.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric parameter '" + piece + "'");
    }
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

TestFunction parse_descriptor(std::string_view descriptor) {
  const std::size_t colon = descriptor.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("descriptor needs the form name:p1[,p2]");
  }
  const std::string_view name = descriptor.substr(0, colon);
  const std::vector<double> p = parse_params(descriptor.substr(colon + 1));

  const auto need = [&](std::size_t n) {
    if (p.size() != n) {
      throw std::invalid_argument(std::string(name) + " takes " + std::to_string(n) +
                                  " parameter(s)");
    }
  };
  if (name == "cobb_douglas") {
    need(2);
    return cobb_douglas(p[0], p[1]);
  }
  if (name == "modular_complement") {
    need(1);
    return modular_complement(p[0]);
  }
  if (name == "neg_complement_power") {
    need(2);
    return neg_complement_power(p[0], p[1]);
  }
  if (name == "constant") {
    need(1);
    return constant_function(p[0]);
  }
  std::string msg = "unknown function '" + std::string(name) + "'; known:";
  for (const auto& n : registry_names()) msg += " " + n;
  throw std::invalid_argument(msg);
}

std::vector<std::string> registry_names() {
  return {"cobb_douglas:a,b", "modular_complement:lambda",
          "neg_complement_power:p,q", "constant:c"};
}

namespace {

void expect(bool ok, const TestFunction& f, const std::string& what, double x, double y) {
  if (!ok) {
    throw std::logic_error(f.descriptor() + ": " + what + " violated near (" + fmt(x) +
                           "," + fmt(y) + ")");
  }
}

}  // namespace

void validate_partials(const TestFunction& f) {
  constexpr int kGrid = 33;
  constexpr double kLo = 0.05;
  constexpr double kHi = 0.95;
  constexpr double kStep = 1e-4;
  constexpr double kSignSlack = 1e-9;

  const auto close = [](double got, double want) {
    return std::abs(got - want) <= std::max(1e-5, 1e-3 * std::abs(want));
  };

  for (int ix = 0; ix < kGrid; ++ix) {
    const double x = kLo + (kHi - kLo) * ix / (kGrid - 1);
    for (int iy = 0; iy < kGrid; ++iy) {
      const double y = kLo + (kHi - kLo) * iy / (kGrid - 1);

      // Orders 1 and 2 against central differences of the evaluator.
      const auto v = [&](double dx, double dy) { return f(x + dx, y + dy); };
      expect(close((v(kStep, 0) - v(-kStep, 0)) / (2 * kStep), f.partial(1, 0, x, y)),
             f, "d/dx finite-difference match", x, y);
      expect(close((v(0, kStep) - v(0, -kStep)) / (2 * kStep), f.partial(0, 1, x, y)),
             f, "d/dy finite-difference match", x, y);
      expect(close((v(kStep, 0) - 2 * v(0, 0) + v(-kStep, 0)) / (kStep * kStep),
                   f.partial(2, 0, x, y)),
             f, "d2/dx2 finite-difference match", x, y);
      expect(close((v(0, kStep) - 2 * v(0, 0) + v(0, -kStep)) / (kStep * kStep),
                   f.partial(0, 2, x, y)),
             f, "d2/dy2 finite-difference match", x, y);
      expect(close((v(kStep, kStep) - v(kStep, -kStep) - v(-kStep, kStep) +
                    v(-kStep, -kStep)) /
                       (4 * kStep * kStep),
                   f.partial(1, 1, x, y)),
             f, "d2/dxdy finite-difference match", x, y);

      // Orders 3 and 4 against differences of the adjacent stored partial;
      // differencing the evaluator directly at this step would drown the
      // estimate in roundoff.
      for (int dx = 0; dx <= 4; ++dx) {
        for (int dy = 0; dx + dy <= 4; ++dy) {
          if (dx + dy < 3) continue;
          double fd;
          if (dx > 0) {
            fd = (f.partial(dx - 1, dy, x + kStep, y) -
                  f.partial(dx - 1, dy, x - kStep, y)) /
                 (2 * kStep);
          } else {
            fd = (f.partial(dx, dy - 1, x, y + kStep) -
                  f.partial(dx, dy - 1, x, y - kStep)) /
                 (2 * kStep);
          }
          expect(close(fd, f.partial(dx, dy, x, y)), f,
                 "order-" + std::to_string(dx + dy) + " ladder match", x, y);
        }
      }

      // Declared shape flags and class tag.
      if (f.increasing()) {
        expect(f.partial(1, 0, x, y) >= -kSignSlack, f, "monotonicity in x", x, y);
        expect(f.partial(0, 1, x, y) >= -kSignSlack, f, "monotonicity in y", x, y);
      }
      if (f.concave_each_arg()) {
        expect(f.partial(2, 0, x, y) <= kSignSlack, f, "concavity in x", x, y);
        expect(f.partial(0, 2, x, y) <= kSignSlack, f, "concavity in y", x, y);
      }
      const double fxy = f.partial(1, 1, x, y);
      switch (f.tag()) {
        case UtilityClass::MMinus:
          expect(fxy <= kSignSlack, f, "submodular sign", x, y);
          break;
        case UtilityClass::MPlus:
          expect(fxy >= -kSignSlack, f, "supermodular sign", x, y);
          break;
        case UtilityClass::MMinusMinus:
          expect(fxy <= kSignSlack, f, "submodular sign", x, y);
          expect(f.partial(2, 0, x, y) <= kSignSlack, f, "own curvature x", x, y);
          expect(f.partial(0, 2, x, y) <= kSignSlack, f, "own curvature y", x, y);
          expect(f.partial(2, 1, x, y) >= -kSignSlack, f, "sign of f_xxy", x, y);
          expect(f.partial(1, 2, x, y) >= -kSignSlack, f, "sign of f_xyy", x, y);
          expect(f.partial(2, 2, x, y) <= kSignSlack, f, "sign of f_xxyy", x, y);
          break;
        case UtilityClass::MPlusPlus:
          expect(fxy >= -kSignSlack, f, "supermodular sign", x, y);
          expect(f.partial(2, 0, x, y) <= kSignSlack, f, "own curvature x", x, y);
          expect(f.partial(0, 2, x, y) <= kSignSlack, f, "own curvature y", x, y);
          expect(f.partial(2, 1, x, y) <= kSignSlack, f, "sign of f_xxy", x, y);
          expect(f.partial(1, 2, x, y) <= kSignSlack, f, "sign of f_xyy", x, y);
          expect(f.partial(2, 2, x, y) >= -kSignSlack, f, "sign of f_xxyy", x, y);
          break;
        case UtilityClass::None:
          break;
      }
    }
  }
}

}  // namespace bsdom
