#include <cmath>

#include "doctest.h"
#include "iifs/errors.hpp"
#include "iifs/interval.hpp"
#include "iifs/rng.hpp"

using namespace iifs;

TEST_CASE("directed rounding produces genuine enclosures") {
  Interval third = div_ui(Interval(1.0, 64), 3);
  CHECK(third.lo_d() < third.hi_d());
  CHECK(third.width_d() > 0.0);
  CHECK(third.width_d() < 1e-18);
  // exact inverse relation: 3 * (1/3) must contain 1
  CHECK(mul_ui(third, 3).contains(1.0));

  Interval x(0.1, 53);
  Interval y = recip(recip(x));
  CHECK(y.contains(0.1));
}

TEST_CASE("arithmetic containment under random composition") {
  // the true value lies in every enclosure: evaluate each expression twice,
  // coarse and fine; the enclosures must intersect and the fine one must be
  // narrower
  Rng rng(2024, 0);
  for (int trial = 0; trial < 300; ++trial) {
    double a = rng.uniform(0.01, 8.0);
    double b = rng.uniform(0.01, 8.0);
    auto expr = [&](prec_t p) {
      Interval ia(a, p), ib(b, p);
      return div(add(mul(ia, ib), Interval(1.0, p)), sub(add_ui(ib, 3), recip(ia)));
    };
    Interval coarse = expr(64), fine = expr(192);
    CHECK(overlaps(coarse, fine));
    CHECK(fine.width_d() <= coarse.width_d());
    // dyadic inputs with exact double products are genuinely contained
    double da = double(rng.uniform_int(1, 1000)) / 64.0;
    double db = double(rng.uniform_int(1, 1000)) / 64.0;
    CHECK(mul(Interval(da, 96), Interval(db, 96)).contains(da * db));
    CHECK(add(Interval(da, 96), Interval(db, 96)).contains(da + db));
  }
}

TEST_CASE("negative operands in products") {
  Interval a(-2.0, -1.0, 64);
  Interval b(3.0, 4.0, 64);
  Interval p = mul(a, b);
  CHECK(p.lo_d() <= -8.0);
  CHECK(p.hi_d() >= -3.0);
  CHECK(p.contains(-5.0));
  Interval n = neg(a);
  CHECK(n.contains(1.5));
}

TEST_CASE("pow and log on positive intervals") {
  Interval two = Interval::point_ui(2, 96);
  Interval r = pow_d(two, -1.5);
  CHECK(mul(r, r).contains(0.125));  // (2^-1.5)^2 = 1/8 exactly
  Interval l = log(two);
  CHECK(exp(l).contains(2.0));
  CHECK_THROWS_AS(pow_d(Interval(-1.0, 64), 0.5), InvalidParameterError);
  CHECK_THROWS_AS(log(Interval(0.0, 64)), InvalidParameterError);
}

TEST_CASE("zeta enclosure matches the classical value") {
  Interval z2 = zeta_point(2.0, 128);
  Interval pi = pi_enclosure(128);
  Interval expect = div_ui(mul(pi, pi), 6);
  CHECK(overlaps(z2, expect));
  CHECK(z2.width_d() < 1e-30);
}

TEST_CASE("comparisons and ties") {
  Interval half1(0.5, 64);
  Interval half2(0.5, 64);
  CHECK(identical_point(half1, half2));
  CHECK(certainly_less(Interval(0.25, 64), half1));
  CHECK(!certainly_less(half1, half2));
  CHECK(overlaps(Interval(0.4, 0.6, 64), half1));
  CHECK_THROWS_AS(recip(Interval(-1.0, 1.0, 64)), DivergenceError);
  CHECK_THROWS_AS(intersect(Interval(0.0, 0.1, 64), Interval(0.2, 0.3, 64)),
                  InvalidParameterError);
}

TEST_CASE("exact dyadic points stay points") {
  Interval p = Interval::point_scaled(0x8000000000000001ULL, -64, 128);
  CHECK(p.is_point());
  CHECK(p.lo_d() >= 0.5);   // outward double rounding lands on 0.5
  CHECK(p.hi_d() > 0.5);    // ... and one ulp above on the other side
  CHECK(p.hi_d() < 0.5 + 1e-15);
}
