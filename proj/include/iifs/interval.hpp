#pragma once

#include <cstdint>
#include <stdint.h>

#define MPFR_USE_INTMAX_T
#include <mpfr.h>

#include <string>

namespace iifs {

using prec_t = mpfr_prec_t;

// Closed interval [lo, hi] over arbitrary-precision binary floats with
// outward (directed) rounding on every operation: the exact value of an
// expression is always contained in the computed enclosure.
class Interval {
 public:
  explicit Interval(prec_t prec = 64);
  Interval(double value, prec_t prec);
  Interval(double lo, double hi, prec_t prec);
  Interval(const Interval&);
  Interval(Interval&&) noexcept;
  Interval& operator=(const Interval&);
  Interval& operator=(Interval&&) noexcept;
  ~Interval();

  static Interval point_ui(unsigned long v, prec_t prec);
  // mantissa * 2^exp2, exact; used to feed dyadic random samples in.
  static Interval point_scaled(std::uint64_t mantissa, long exp2, prec_t prec);
  static Interval from_decimal(const std::string& text, prec_t prec);

  prec_t precision() const;
  bool is_point() const;
  double lo_d() const;  // rounded toward -inf
  double hi_d() const;  // rounded toward +inf
  double mid_d() const;
  double width_d() const;
  // floor(log2(width)), or LONG_MIN when the interval is a point.
  long width_exponent() const;
  bool contains(double v) const;
  bool contains(const Interval& inner) const;

  mpfr_srcptr lo_raw() const { return lo_; }
  mpfr_srcptr hi_raw() const { return hi_; }
  mpfr_ptr lo_raw() { return lo_; }
  mpfr_ptr hi_raw() { return hi_; }

  std::string str(std::size_t digits = 20) const;

 private:
  mpfr_t lo_, hi_;
};

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval div(const Interval& a, const Interval& b);
Interval add_ui(const Interval& a, unsigned long b);
Interval sub_ui(const Interval& a, unsigned long b);
Interval mul_ui(const Interval& a, unsigned long b);
Interval div_ui(const Interval& a, unsigned long b);
Interval recip(const Interval& a);
Interval sqrt(const Interval& a);
Interval log(const Interval& a);
Interval exp(const Interval& a);
Interval neg(const Interval& a);
// a^e for a > 0 and a real exponent; monotone case analysis inside.
Interval pow_d(const Interval& a, double e);
Interval intersect(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);

// Riemann zeta enclosure via MPFR's correctly rounded zeta.
Interval zeta_point(double t, prec_t prec);
Interval zeta_point(const Interval& t, prec_t prec);
Interval pi_enclosure(prec_t prec);

bool certainly_less(const Interval& a, const Interval& b);          // a.hi <  b.lo
bool certainly_less_equal(const Interval& a, const Interval& b);    // a.hi <= b.lo
bool overlaps(const Interval& a, const Interval& b);
bool identical_point(const Interval& a, const Interval& b);

}  // namespace iifs
