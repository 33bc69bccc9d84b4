#include "iifs/interval.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <stdexcept>

#include "iifs/errors.hpp"

namespace iifs {

Interval::Interval(prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(double value, prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_d(lo_, value, MPFR_RNDD);
  mpfr_set_d(hi_, value, MPFR_RNDU);
}

Interval::Interval(double lo, double hi, prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_d(lo_, lo, MPFR_RNDD);
  mpfr_set_d(hi_, hi, MPFR_RNDU);
  if (mpfr_greater_p(lo_, hi_)) throw InvalidParameterError("interval: lo > hi");
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  lo_[0] = o.lo_[0];
  hi_[0] = o.hi_[0];
  // leave the source valid for clear()
  mpfr_init2(o.lo_, MPFR_PREC_MIN);
  mpfr_init2(o.hi_, MPFR_PREC_MIN);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  if (mpfr_get_prec(lo_) != mpfr_get_prec(o.lo_)) mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
  if (mpfr_get_prec(hi_) != mpfr_get_prec(o.hi_)) mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  if (this == &o) return *this;
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point_ui(unsigned long v, prec_t prec) {
  Interval r(prec);
  mpfr_set_ui(r.lo_, v, MPFR_RNDD);
  mpfr_set_ui(r.hi_, v, MPFR_RNDU);
  return r;
}

Interval Interval::point_scaled(std::uint64_t mantissa, long exp2, prec_t prec) {
  Interval r(prec);
  mpfr_set_uj_2exp(r.lo_, mantissa, exp2, MPFR_RNDD);
  mpfr_set_uj_2exp(r.hi_, mantissa, exp2, MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(const std::string& text, prec_t prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_, text.c_str(), 10, MPFR_RNDD) != 0 &&
      mpfr_nan_p(r.lo_))
    throw InvalidParameterError("cannot parse number: " + text);
  mpfr_set_str(r.hi_, text.c_str(), 10, MPFR_RNDU);
  return r;
}

prec_t Interval::precision() const { return mpfr_get_prec(lo_); }

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

double Interval::lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_d() const {
  mpfr_t m;
  mpfr_init2(m, 64);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double v = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return v;
}

double Interval::width_d() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double v = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return v;
}

long Interval::width_exponent() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  long e = LONG_MIN;
  if (!mpfr_zero_p(w)) e = mpfr_get_exp(w);
  mpfr_clear(w);
  return e;
}

bool Interval::contains(double v) const {
  return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_lessequal_p(inner.hi_, hi_);
}

std::string Interval::str(std::size_t digits) const {
  char* slo = nullptr;
  char* shi = nullptr;
  mpfr_asprintf(&slo, "%.*Rg", static_cast<int>(digits), lo_);
  mpfr_asprintf(&shi, "%.*Rg", static_cast<int>(digits), hi_);
  std::string out = std::string("[") + slo + ", " + shi + "]";
  mpfr_free_str(slo);
  mpfr_free_str(shi);
  return out;
}

namespace {
prec_t join_prec(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}
}  // namespace

Interval add(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_add(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_add(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

Interval sub(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_sub(r.lo_raw(), a.lo_raw(), b.hi_raw(), MPFR_RNDD);
  mpfr_sub(r.hi_raw(), a.hi_raw(), b.lo_raw(), MPFR_RNDU);
  return r;
}

Interval mul(const Interval& a, const Interval& b) {
  prec_t p = join_prec(a, b);
  Interval r(p);
  // fast path: both nonnegative (the dominant case here)
  if (mpfr_sgn(a.lo_raw()) >= 0 && mpfr_sgn(b.lo_raw()) >= 0) {
    mpfr_mul(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
    mpfr_mul(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
    return r;
  }
  mpfr_t c[4];
  for (auto& x : c) mpfr_init2(x, p);
  mpfr_mul(c[0], a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_mul(c[1], a.lo_raw(), b.hi_raw(), MPFR_RNDD);
  mpfr_mul(c[2], a.hi_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_mul(c[3], a.hi_raw(), b.hi_raw(), MPFR_RNDD);
  mpfr_min(r.lo_raw(), c[0], c[1], MPFR_RNDD);
  mpfr_min(r.lo_raw(), r.lo_raw(), c[2], MPFR_RNDD);
  mpfr_min(r.lo_raw(), r.lo_raw(), c[3], MPFR_RNDD);
  mpfr_mul(c[0], a.lo_raw(), b.lo_raw(), MPFR_RNDU);
  mpfr_mul(c[1], a.lo_raw(), b.hi_raw(), MPFR_RNDU);
  mpfr_mul(c[2], a.hi_raw(), b.lo_raw(), MPFR_RNDU);
  mpfr_mul(c[3], a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  mpfr_max(r.hi_raw(), c[0], c[1], MPFR_RNDU);
  mpfr_max(r.hi_raw(), r.hi_raw(), c[2], MPFR_RNDU);
  mpfr_max(r.hi_raw(), r.hi_raw(), c[3], MPFR_RNDU);
  for (auto& x : c) mpfr_clear(x);
  return r;
}

Interval div(const Interval& a, const Interval& b) {
  prec_t p = join_prec(a, b);
  if (mpfr_sgn(b.lo_raw()) <= 0 && mpfr_sgn(b.hi_raw()) >= 0)
    throw DivergenceError("interval division by an interval containing zero");
  Interval r(p);
  if (mpfr_sgn(a.lo_raw()) >= 0 && mpfr_sgn(b.lo_raw()) > 0) {
    mpfr_div(r.lo_raw(), a.lo_raw(), b.hi_raw(), MPFR_RNDD);
    mpfr_div(r.hi_raw(), a.hi_raw(), b.lo_raw(), MPFR_RNDU);
    return r;
  }
  return mul(a, recip(b));
}

Interval add_ui(const Interval& a, unsigned long b) {
  Interval r(a.precision());
  mpfr_add_ui(r.lo_raw(), a.lo_raw(), b, MPFR_RNDD);
  mpfr_add_ui(r.hi_raw(), a.hi_raw(), b, MPFR_RNDU);
  return r;
}

Interval sub_ui(const Interval& a, unsigned long b) {
  Interval r(a.precision());
  mpfr_sub_ui(r.lo_raw(), a.lo_raw(), b, MPFR_RNDD);
  mpfr_sub_ui(r.hi_raw(), a.hi_raw(), b, MPFR_RNDU);
  return r;
}

Interval mul_ui(const Interval& a, unsigned long b) {
  // scaling by a nonnegative integer is monotone
  Interval r(a.precision());
  mpfr_mul_ui(r.lo_raw(), a.lo_raw(), b, MPFR_RNDD);
  mpfr_mul_ui(r.hi_raw(), a.hi_raw(), b, MPFR_RNDU);
  return r;
}

Interval div_ui(const Interval& a, unsigned long b) {
  if (b == 0) throw DivergenceError("division by zero");
  Interval r(a.precision());
  mpfr_div_ui(r.lo_raw(), a.lo_raw(), b, MPFR_RNDD);
  mpfr_div_ui(r.hi_raw(), a.hi_raw(), b, MPFR_RNDU);
  return r;
}

Interval recip(const Interval& a) {
  if (mpfr_sgn(a.lo_raw()) <= 0 && mpfr_sgn(a.hi_raw()) >= 0)
    throw DivergenceError("reciprocal of an interval containing zero");
  Interval r(a.precision());
  mpfr_ui_div(r.lo_raw(), 1, a.hi_raw(), MPFR_RNDD);
  mpfr_ui_div(r.hi_raw(), 1, a.lo_raw(), MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.lo_raw()) < 0) throw InvalidParameterError("sqrt of negative interval");
  Interval r(a.precision());
  mpfr_sqrt(r.lo_raw(), a.lo_raw(), MPFR_RNDD);
  mpfr_sqrt(r.hi_raw(), a.hi_raw(), MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_raw()) <= 0) throw InvalidParameterError("log of non-positive interval");
  Interval r(a.precision());
  mpfr_log(r.lo_raw(), a.lo_raw(), MPFR_RNDD);
  mpfr_log(r.hi_raw(), a.hi_raw(), MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.precision());
  mpfr_exp(r.lo_raw(), a.lo_raw(), MPFR_RNDD);
  mpfr_exp(r.hi_raw(), a.hi_raw(), MPFR_RNDU);
  return r;
}

Interval neg(const Interval& a) {
  Interval r(a.precision());
  mpfr_neg(r.lo_raw(), a.hi_raw(), MPFR_RNDD);
  mpfr_neg(r.hi_raw(), a.lo_raw(), MPFR_RNDU);
  return r;
}

Interval pow_d(const Interval& a, double e) {
  if (mpfr_sgn(a.lo_raw()) <= 0) throw InvalidParameterError("pow_d needs a positive base");
  prec_t p = a.precision();
  Interval r(p);
  mpfr_t ex;
  mpfr_init2(ex, 64);
  mpfr_set_d(ex, e, MPFR_RNDN);
  if (e >= 0) {
    mpfr_pow(r.lo_raw(), a.lo_raw(), ex, MPFR_RNDD);
    mpfr_pow(r.hi_raw(), a.hi_raw(), ex, MPFR_RNDU);
  } else {
    mpfr_pow(r.lo_raw(), a.hi_raw(), ex, MPFR_RNDD);
    mpfr_pow(r.hi_raw(), a.lo_raw(), ex, MPFR_RNDU);
  }
  mpfr_clear(ex);
  return r;
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_max(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_min(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  if (mpfr_greater_p(r.lo_raw(), r.hi_raw()))
    throw InvalidParameterError("empty interval intersection");
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(join_prec(a, b));
  mpfr_min(r.lo_raw(), a.lo_raw(), b.lo_raw(), MPFR_RNDD);
  mpfr_max(r.hi_raw(), a.hi_raw(), b.hi_raw(), MPFR_RNDU);
  return r;
}

Interval zeta_point(double t, prec_t prec) {
  if (t <= 1.0) throw DivergenceError("zeta diverges for t <= 1");
  Interval r(prec);
  mpfr_t arg;
  mpfr_init2(arg, 64);
  mpfr_set_d(arg, t, MPFR_RNDN);
  mpfr_zeta(r.lo_raw(), arg, MPFR_RNDD);
  mpfr_zeta(r.hi_raw(), arg, MPFR_RNDU);
  mpfr_clear(arg);
  return r;
}

Interval zeta_point(const Interval& t, prec_t prec) {
  if (mpfr_cmp_ui(t.lo_raw(), 1) <= 0) throw DivergenceError("zeta diverges for t <= 1");
  // zeta is decreasing on (1, inf)
  Interval r(prec);
  mpfr_zeta(r.lo_raw(), t.hi_raw(), MPFR_RNDD);
  mpfr_zeta(r.hi_raw(), t.lo_raw(), MPFR_RNDU);
  return r;
}

Interval pi_enclosure(prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_raw(), MPFR_RNDD);
  mpfr_const_pi(r.hi_raw(), MPFR_RNDU);
  return r;
}

bool certainly_less(const Interval& a, const Interval& b) {
  return mpfr_less_p(a.hi_raw(), b.lo_raw());
}

bool certainly_less_equal(const Interval& a, const Interval& b) {
  return mpfr_lessequal_p(a.hi_raw(), b.lo_raw());
}

bool overlaps(const Interval& a, const Interval& b) {
  return !certainly_less(a, b) && !certainly_less(b, a);
}

bool identical_point(const Interval& a, const Interval& b) {
  return a.is_point() && b.is_point() && mpfr_equal_p(a.lo_raw(), b.lo_raw());
}

}  // namespace iifs
