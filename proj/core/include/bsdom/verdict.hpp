#pragma once

#include <optional>
#include <string>

namespace bsdom {

inline constexpr double kDefaultTolerance = 1e-9;

// Location (and condition family) where a checked inequality fails. For
// univariate families the unused coordinate is 0.
struct Witness {
  double x = 0.0;
  double y = 0.0;
  std::string family;

  friend bool operator==(const Witness&, const Witness&) = default;
};

// Outcome of a dominance-condition check. Conditions have the form
// lhs(p) <= rhs(p) for all p; margin is the largest observed lhs - rhs, so
// holds <=> margin <= tolerance. A witness is attached only on failure.
// strict_somewhere records whether lhs < rhs strictly (beyond the tolerance)
// at some checked point, distinguishing genuine improvement from equality.
// approximate marks verdicts whose supremum was located by sampling rather
// than closed form.
struct DominanceVerdict {
  bool holds = false;
  double margin = 0.0;
  std::optional<Witness> witness;
  bool strict_somewhere = false;
  double tolerance = kDefaultTolerance;
  bool approximate = false;

  friend bool operator==(const DominanceVerdict&, const DominanceVerdict&) = default;
};

}  // namespace bsdom
