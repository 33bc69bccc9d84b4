#pragma once

#include <cstdint>
#include <vector>

#include "iifs/errors.hpp"
#include "iifs/interval.hpp"

namespace iifs {

// Symbolic address of a cylinder: finite word of digits >= 1. The empty
// word addresses the level-0 cylinder [0,1].
using DigitWord = std::vector<std::uint64_t>;

inline void validate_word(const DigitWord& w) {
  for (auto a : w)
    if (a == 0) throw InvalidParameterError("digit words must have entries >= 1");
}

// A cylinder interval with certified endpoint enclosures. `left` and
// `right` each enclose one true endpoint, so
//   outer hull  [left.lo, right.hi]  contains the cylinder,
//   inner core  [left.hi, right.lo]  is contained in it.
struct CylinderInterval {
  DigitWord word;
  Interval left;
  Interval right;
  long precision_bits = 0;  // achieved endpoint accuracy, -log2(width)
  bool degraded = false;    // achieved far less than requested

  double lo() const { return left.lo_d(); }
  double hi() const { return right.hi_d(); }

  // Certified bracket of the true length |I_n|.
  Interval length() const {
    Interval len = sub(right, left);
    if (mpfr_sgn(len.lo_raw()) < 0) mpfr_set_zero(len.lo_raw(), 1);
    return len;
  }

  bool contains_point(const Interval& x) const {
    return !certainly_less(x, left) && !certainly_less(right, x);
  }
};

}  // namespace iifs
