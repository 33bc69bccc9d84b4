#include <cmath>

#include "doctest.h"
#include "iifs/measures.hpp"
#include "iifs/rng.hpp"
#include "iifs/system.hpp"

using namespace iifs;

namespace {
const GaussLikeSystem& cf() {
  static GaussLikeSystem s = make_system(SystemKind::ContinuedFraction);
  return s;
}
const GaussLikeSystem& luroth() {
  static GaussLikeSystem s = make_system(SystemKind::Luroth);
  return s;
}
const GaussLikeSystem& qg() {
  static GaussLikeSystem s = make_system(SystemKind::QuadraticGauss);
  return s;
}
const GaussLikeSystem& ld25() {
  static GaussLikeSystem s = make_system(SystemKind::LinearDecay, 2.5);
  return s;
}
}  // namespace

TEST_CASE("system construction and fixed decay exponents") {
  CHECK(cf().d() == 2.0);
  CHECK(luroth().d() == 2.0);
  CHECK(qg().d() == 3.0);
  CHECK(ld25().d() == 2.5);
  CHECK_THROWS_AS(make_system(SystemKind::LinearDecay, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(make_system(SystemKind::LinearDecay), InvalidParameterError);
  CHECK_THROWS_AS(make_system(SystemKind::ContinuedFraction, 3.0), InvalidParameterError);
}

TEST_CASE("json configuration surface") {
  GaussLikeSystem a = system_from_json("{\"kind\": \"linear_decay\", \"d\": 2.5}");
  CHECK(a.d() == 2.5);
  GaussLikeSystem b = system_from_json("{\"kind\": \"continued_fraction\"}");
  CHECK(b.kind() == SystemKind::ContinuedFraction);
  CHECK_THROWS_AS(system_from_json("{\"d\": 2.5}"), InvalidParameterError);
  CHECK_THROWS_AS(system_from_json("not json"), InvalidParameterError);
}

TEST_CASE("linear decay has exact affine branch lengths 1/(n^d zeta(d))") {
  // |I_1(n)| = p_n - p_{n+1} = n^-2.5 / zeta(2.5)
  Interval z = zeta_enclosure(2.5, 128);
  for (std::uint64_t n : {1, 2, 3, 7, 40}) {
    Interval expect = div(pow_d(Interval::point_ui(n, 128), -2.5), z);
    Interval got = ld25().level1_length(n, 128);
    CHECK(overlaps(got, expect));
    // cross-check against the partition points themselves
    Interval diff = sub(ld25().cylinder_boundary(n - 1, 128), ld25().cylinder_boundary(n, 128));
    CHECK(overlaps(diff, expect));
  }
  // c1 = c2 = 1/zeta(d)
  CHECK(overlaps(ld25().c1(128), recip(z)));
  CHECK(ld25().c1_d() <= ld25().c2_d());
}

TEST_CASE("branch map examples") {
  CHECK(branch_value(cf(), 1, 0.0, 64).contains(1.0));
  CHECK(branch_value(luroth(), 2, 0.4, 64).contains(0.4));  // fixed point of the branch
  CHECK(branch_value(qg(), 1, 1.0, 64).contains(0.25));
  CHECK_THROWS_AS(branch_value(cf(), 0, 0.5, 64), InvalidParameterError);
  CHECK_THROWS_AS(branch_value(cf(), 1, 1.5, 64), InvalidParameterError);
}

TEST_CASE("digit expansions against classical oracles") {
  // golden ratio: fixed point of the first branch
  Interval golden = Interval::from_decimal(
      "0.61803398874989484820458683436563811772030917980576", 256);
  ExpansionResult g = expand(cf(), golden, 10, 256);
  REQUIRE(g.digits.size() == 10);
  for (auto d : g.digits) CHECK(d == 1);
  CHECK(g.trusted_count == 10);

  // classical continued fraction of pi - 3
  Interval pim3 = Interval::from_decimal(
      "0.14159265358979323846264338327950288419716939937510", 256);
  ExpansionResult p = expand(cf(), pim3, 4, 256);
  CHECK(p.digits == DigitWord{7, 15, 1, 292});

  // Luroth shift fixes 0.4
  ExpansionResult l = expand(luroth(), 0.4, 5, 128);
  CHECK(l.digits == DigitWord{2, 2, 2, 2, 2});
}

TEST_CASE("projection endpoints and nesting") {
  CylinderInterval c1 = project(cf(), {1}, 128);
  CHECK(c1.left.contains(0.5));
  CHECK(c1.right.contains(1.0));
  CHECK(c1.length().contains(0.5));

  CylinderInterval c11 = project(cf(), {1, 1}, 128);
  CHECK(c11.left.contains(0.5));
  CHECK(c11.right.contains(2.0 / 3.0));
  CHECK(c11.length().contains(1.0 / 6.0));

  // 20 twos: encloses sqrt(2) - 1
  DigitWord twos(20, 2);
  CylinderInterval c2 = project(cf(), twos, 192);
  Interval root2m1 = sub(sqrt(Interval::point_ui(2, 192)), Interval(1.0, 192));
  CHECK(c2.contains_point(root2m1));

  // nesting: I(w . a) inside I(w)
  Rng rng(5, 0);
  for (int t = 0; t < 50; ++t) {
    DigitWord w;
    std::size_t len = 1 + rng.uniform_int(0, 5);
    for (std::size_t i = 0; i < len; ++i) w.push_back(rng.uniform_int(1, 30));
    CylinderInterval outer = project(cf(), w, 160);
    w.push_back(rng.uniform_int(1, 30));
    CylinderInterval inner = project(cf(), w, 160);
    CHECK(outer.lo() <= inner.lo() + 1e-30);
    CHECK(inner.hi() <= outer.hi() + 1e-30);
  }
}

TEST_CASE("length bounds sandwich certified constants") {
  // linear decay, word (3,5): both bounds equal (1/zeta(2))^2 * 15^-2
  GaussLikeSystem ld2 = make_system(SystemKind::LinearDecay, 2.0);
  auto [lo, hi] = cylinder_length_bounds_enc(ld2, {3, 5}, 128);
  Interval z = zeta_enclosure(2.0, 128);
  Interval expect = div_ui(div_ui(recip(mul(z, z)), 15), 15);
  CHECK(overlaps(lo, expect));
  CHECK(overlaps(hi, expect));
  // and the cylinder itself sits inside
  Interval len = project(ld2, {3, 5}, 160).length();
  CHECK(len.lo_d() >= lo.lo_d() - 1e-25);
  CHECK(len.hi_d() <= hi.hi_d() + 1e-25);

  // continued fractions, word (1): bounds bracket |I_1(1)| = 1/2
  auto [clo, chi] = cylinder_length_bounds_enc(cf(), {1}, 96);
  CHECK(clo.lo_d() <= 0.5);
  CHECK(chi.hi_d() >= 0.5);

  // all-ones word: bounds are c_i^n
  LengthBounds lb = cylinder_length_bounds(cf(), DigitWord(6, 1));
  CHECK(lb.log_lower == doctest::Approx(6 * std::log(0.25)).epsilon(1e-12));
  CHECK(lb.log_upper == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("equation (1.1) sandwich holds on random words for every system") {
  const GaussLikeSystem* systems[] = {&cf(), &luroth(), &qg(), &ld25()};
  Rng rng(77, 1);
  for (const GaussLikeSystem* sys : systems) {
    for (int t = 0; t < 400; ++t) {
      std::size_t len = 1 + rng.uniform_int(0, 9);
      DigitWord w;
      for (std::size_t i = 0; i < len; ++i) w.push_back(rng.uniform_int(1, 100));
      Interval len_enc = project(*sys, w, 320).length();
      auto [blo, bhi] = cylinder_length_bounds_enc(*sys, w, 320);
      // a certified violation would show the cylinder entirely off the bound
      CHECK(!certainly_less(len_enc, blo));
      CHECK(!certainly_less(bhi, len_enc));
    }
  }
}

TEST_CASE("derivative bounds per branch") {
  DerivativeBounds b = cf().derivative_bounds(1, 96);
  CHECK(b.xi.contains(0.25));
  CHECK(b.lambda.contains(1.0));
  DerivativeBounds l = luroth().derivative_bounds(5, 96);
  CHECK(l.xi.contains(1.0 / 30.0));
  CHECK(identical_point(l.xi, l.lambda));
  DerivativeBounds q = qg().derivative_bounds(1, 96);
  CHECK(q.xi.contains(0.25));
  CHECK(q.lambda.contains(2.0));
  // c1/i^d <= xi <= lambda <= c2/i^d
  for (std::uint64_t i : {1, 2, 10, 50}) {
    DerivativeBounds db = qg().derivative_bounds(i, 96);
    double id = std::pow(double(i), -3.0);
    CHECK(db.xi.hi_d() >= qg().c1_d() * id - 1e-15);
    CHECK(db.lambda.lo_d() <= qg().c2_d() * id + 1e-15);
  }
}

TEST_CASE("round trip: x lies in the projected cylinder of its expansion") {
  const GaussLikeSystem* systems[] = {&cf(), &luroth(), &qg(), &ld25()};
  Rng rng(11, 3);
  for (const GaussLikeSystem* sys : systems) {
    int trusted_full = 0;
    for (int t = 0; t < 25; ++t) {
      double xd = rng.uniform(0.01, 0.99);
      Interval x(xd, 512);
      ExpansionResult r = expand(*sys, x, 30, 512);
      if (r.trusted_count == 30) {
        ++trusted_full;
        CylinderInterval cyl = project(*sys, r.digits, 512);
        CHECK(cyl.contains_point(x));
      }
    }
    CHECK(trusted_full >= 24);  // ample margin at 512 bits
  }
}

TEST_CASE("tiling: level-1 lengths sum to 1") {
  const GaussLikeSystem* systems[] = {&cf(), &luroth(), &qg(), &ld25()};
  for (const GaussLikeSystem* sys : systems) {
    Interval sum(96);
    const std::uint64_t cap = 3000;
    for (std::uint64_t a = 1; a <= cap; ++a)
      sum = add(sum, sys->level1_length(a, 96));
    // remaining mass is the leftmost gap [0, boundary(cap)]
    Interval gap = sys->cylinder_boundary(cap, 96);
    CHECK(add(sum, gap).contains(1.0));
    CHECK(sum.hi_d() <= 1.0 + 1e-20);
    CHECK(sum.lo_d() > 1.0 - 2.0 * gap.hi_d());
  }
}

TEST_CASE("branch ordering is strictly decreasing in the index") {
  const GaussLikeSystem* systems[] = {&cf(), &luroth(), &qg(), &ld25()};
  for (const GaussLikeSystem* sys : systems) {
    double prev = sys->map_d(1, 0.5);
    for (std::uint64_t i = 2; i <= 1000; ++i) {
      double cur = sys->map_d(i, 0.5);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("endpoint ties break toward the smaller branch index") {
  // 1/2 is the shared endpoint of I_1(1) and I_1(2)
  ExpansionResult r = expand(cf(), Interval(0.5, 128), 2, 128);
  CHECK(r.digits == DigitWord{1, 1});
  CHECK(r.ambiguous);
  CHECK(r.trusted_count == 2);
  // continuing past the terminating point raises
  CHECK_THROWS_AS(expand(cf(), Interval(0.5, 128), 5, 128), AmbiguousExpansionError);
}

TEST_CASE("expand validates its domain") {
  CHECK_THROWS_AS(expand(cf(), Interval(0.0, 64), 5, 64), InvalidParameterError);
  CHECK_THROWS_AS(expand(cf(), Interval(1.0, 64), 5, 64), InvalidParameterError);
}

TEST_CASE("adaptive precision certifies deep expansions") {
  ExpansionResult r = expand(cf(), 0.37, 120, 0);
  CHECK(r.trusted_count == 120);
  CHECK(r.precision_used >= 64);
  ExpansionResult r2 = expand(ld25(), 0.37, 60, 0);
  CHECK(r2.trusted_count == 60);
}

TEST_CASE("kappa metadata") {
  CHECK(cf().kappa() == 4.0);
  CHECK(luroth().kappa() == 1.0);
  CHECK(!qg().kappa().has_value());
}
