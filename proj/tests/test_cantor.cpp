#include <cmath>
#include <limits>

#include "doctest.h"
#include "iifs/cantor.hpp"
#include "iifs/exponents.hpp"

using namespace iifs;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("builtin proof sequences") {
  CantorSpec e0 = builtin_cantor_spec(CantorFamily::E0);
  CHECK(e0.s(3) == doctest::Approx(2.0 * std::exp(3.0)));
  CHECK(e0.r(3) == doctest::Approx(std::exp(3.0)));

  CantorSpec jq = builtin_cantor_spec(CantorFamily::Jqdg, 4.0, 2.0);
  // alpha/sigma_t - 1 = 1: s_n = (2n+1) n, r_n = n
  CHECK(jq.s(3) == doctest::Approx(21.0));
  CHECK(jq.r(3) == doctest::Approx(3.0));

  CantorSpec ew = builtin_cantor_spec(CantorFamily::EAlphaWeighted, 1.0, 2.0);
  CHECK(ew.s(9) == doctest::Approx(2.0 * 3.0));
  CHECK(ew.r(9) == doctest::Approx(3.0));

  CantorSpec ib = builtin_cantor_spec(CantorFamily::InfinityBranch);
  CHECK(ib.log_s(5) == doctest::Approx(std::log(11.0) + 5.0));

  CHECK_THROWS_AS(builtin_cantor_spec(CantorFamily::Jqdg, 2.0, 2.0), InvalidParameterError);
  CHECK_THROWS_AS(builtin_cantor_spec(CantorFamily::PowerAlpha, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(builtin_cantor_spec(CantorFamily::PowerAlpha, kInf), InvalidParameterError);
}

TEST_CASE("sampling stays in the digit boxes") {
  CantorSpec e0 = builtin_cantor_spec(CantorFamily::E0);
  CantorSample s = sample_point(e0, 5, 42);
  REQUIRE(s.digits.size() == 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    double en = std::exp(double(n));
    CHECK(double(s.digits[n - 1]) >= std::ceil(en));
    CHECK(double(s.digits[n - 1]) <= std::floor(3.0 * en));
  }
  // deterministic per seed
  CHECK(sample_point(e0, 5, 42).digits == s.digits);
  CHECK(sample_point(e0, 5, 43).digits != s.digits);
}

TEST_CASE("digit ranges of this construction are disjoint and increasing") {
  // max of box n: (2n+2)n^(alpha/sigma_t - 1) < min of box n+1: (2n+2)(n+1)^(...)
  CantorSpec jq = builtin_cantor_spec(CantorFamily::Jqdg, 4.0, 2.0);
  for (int seed = 0; seed < 60; ++seed) {
    CantorSample s = sample_point(jq, 200, seed);
    CHECK(s.monotone_violation_rate == 0.0);
    CHECK(is_monotone(s.digits));
  }
}

TEST_CASE("rejection sampling yields monotone words where overlaps exist") {
  CantorSpec e0 = builtin_cantor_spec(CantorFamily::E0);
  // overlapping boxes: violations occur occasionally without rejection
  double rate = 0.0;
  for (int seed = 0; seed < 100; ++seed)
    rate += sample_point(e0, 30, seed).monotone_violation_rate;
  CHECK(rate > 0.0);
  for (int seed = 0; seed < 20; ++seed) {
    CantorSample s = sample_point(e0, 30, seed, /*reject_nonmonotone=*/true);
    CHECK(is_monotone(s.digits));
  }
}

TEST_CASE("exponential families overflow gracefully") {
  CantorSpec e0 = builtin_cantor_spec(CantorFamily::E0);
  CHECK_THROWS_AS(sample_point(e0, 100, 1), ConstructionError);
}

TEST_CASE("power-alpha samples carry the intended exponent") {
  CantorSpec pa = builtin_cantor_spec(CantorFamily::PowerAlpha, 2.0);
  CantorSample s = sample_point(pa, 10000, 7);
  // scale-invariant estimator: the threshold of sum a_n^-s is alpha = 2
  double tau = tau_by_partial_sums(s.digits, 0.0, 4.0).value;
  CHECK(tau == doctest::Approx(2.0).epsilon(0.08));
  // the ratio diagnostics of the raw sequence see a_n ~ n^(1/2)
  WeightVector w({1.0, 1.0});
  auto diag = ratio_diagnostics(s.digits, w);
  CHECK(diag.ratio_liminf == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("dimension formula on the proof sequences") {
  // closed-form oracle for the E0 ratio at finite n:
  //   (n(n+1)/2) / ((n+1)(n+1+2 log 2))
  CantorSpec e0 = builtin_cantor_spec(CantorFamily::E0);
  std::vector<double> trace;
  CantorDimensionEstimate est = cantor_dimension_estimate(e0, 10000, 2.0, &trace);
  auto e0_oracle = [](double n) {
    return (n * (n + 1.0) / 2.0) / ((n + 1.0) * (n + 1.0 + 2.0 * std::log(2.0)));
  };
  CHECK(est.value_at_nmax == doctest::Approx(e0_oracle(10000.0)).epsilon(1e-9));
  CHECK(trace[999] == doctest::Approx(e0_oracle(1000.0)).epsilon(1e-9));
  CHECK(est.value_at_nmax == doctest::Approx(0.5).epsilon(0.01));
  CHECK(est.running_min_tail <= est.value_at_nmax);

  // lgamma oracle for the power family at n = 10^4:
  //   sum log r = (1/3) lgamma(n+1); denominator from lgamma as well
  CantorSpec pa3 = builtin_cantor_spec(CantorFamily::PowerAlpha, 3.0);
  CantorDimensionEstimate pest = cantor_dimension_estimate(pa3, 10000, 2.0);
  double n = 10000.0;
  double num = std::lgamma(n + 1.0) / 3.0;
  double den = 2.0 * ((n + 1.0) * std::log(2.0) + std::lgamma(n + 2.0) / 3.0) -
               std::log(n + 1.0) / 3.0;
  CHECK(pest.value_at_nmax == doctest::Approx(num / den).epsilon(1e-6));

  CantorSpec jq = builtin_cantor_spec(CantorFamily::Jqdg, 4.0, 2.0);
  CantorDimensionEstimate jest = cantor_dimension_estimate(jq, 100000, 2.0);
  CHECK(jest.running_min_tail == doctest::Approx(0.25).epsilon(0.04));

  CHECK_THROWS_AS(cantor_dimension_estimate(e0, 50, 2.0), InvalidParameterError);
}

TEST_CASE("tabulated sequences: prefix checks warn but do not reject") {
  std::vector<std::string> warnings;
  std::vector<double> s{4, 8, 16, 32}, r{2, 4, 8, 16};
  CantorSpec spec = tabulated_cantor_spec(s, r, &warnings);
  CHECK(warnings.empty());
  CHECK(spec.s(2) == doctest::Approx(8.0));

  std::vector<double> bad_r{8, 4, 8, 16};  // violates s > r at n = 1
  warnings.clear();
  tabulated_cantor_spec(s, bad_r, &warnings);
  CHECK(!warnings.empty());
  CHECK_THROWS_AS(tabulated_cantor_spec({1.0}, {1.0, 2.0}), InvalidParameterError);
}

TEST_CASE("degenerate sequences are rejected by the formula") {
  // r_n <= 1 for all n: log r_n <= 0 beyond the burn-in
  std::vector<double> s(200, 4.0), r(200, 0.5);
  CantorSpec spec = tabulated_cantor_spec(s, r);
  CHECK_THROWS_AS(cantor_dimension_estimate(spec, 150, 2.0), DegenerateSequenceError);
}

TEST_CASE("spectrum formulas of the level sets") {
  CHECK(dim_tau1_level(0.0, 2.0) == 0.5);
  CHECK(dim_tau1_level(7.3, 3.0) == 1.0 / 3.0);
  CHECK_THROWS_AS(dim_tau1_level(kInf, 2.0), InvalidParameterError);

  WeightVector w11({1.0, 1.0});
  CHECK(dim_tau2_level(2.0, w11, 2.0) == 0.5);
  CHECK(dim_tau2_level(0.0, WeightVector({3.0, 0.0, 1.0}), 3.0) == 1.0 / 3.0);
  CHECK(dim_tau1_level(0.0, 2.0) == dim_tau2_level(0.0, w11, 2.0));

  CHECK(dim_monotone_product_level(2.0, 2.0, 2.0) == 0.0);
  CHECK(dim_monotone_product_level(4.0, 2.0, 2.0) == 0.25);
  CHECK(dim_monotone_product_level(kInf, 2.0, 3.0) == 1.0 / 3.0);
  CHECK(dim_monotone_product_level(1.0, 2.0, 2.0) == 0.0);

  // limit / limsup variants coincide
  CHECK(dim_monotone_product_level_limit(6.0, 3.0, 2.0) == 0.25);
  CHECK(dim_monotone_product_level_limsup(6.0, 3.0, 2.0) ==
        dim_monotone_product_level(6.0, 3.0, 2.0));
  CHECK(dim_monotone_product_level_limit(0.0, 1.0, 2.0) == 0.0);
  CHECK(dim_monotone_product_level_limit(kInf, 1.0, 2.0) == 0.5);
}

TEST_CASE("spectrum is continuous at sigma_t and increases to 1/d") {
  double sigma = 2.0, d = 2.0;
  CHECK(dim_monotone_product_level(sigma - 1e-12, sigma, d) == 0.0);
  CHECK(dim_monotone_product_level(sigma, sigma, d) == 0.0);
  double prev = -1.0;
  for (double a = sigma; a < 500.0; a += 0.5) {
    double v = dim_monotone_product_level(a, sigma, d);
    CHECK(v >= prev);
    CHECK(v < 1.0 / d);
    prev = v;
  }
  CHECK(dim_monotone_product_level(1e12, sigma, d) == doctest::Approx(1.0 / d).epsilon(1e-10));
}

TEST_CASE("the weighted spectra do not depend on the weights") {
  for (int i = 0; i < 10; ++i) {
    std::vector<double> w{1.0 + 0.37 * i, 0.0, 0.2 * i + 0.1};
    CHECK(dim_tau2_level(3.0, WeightVector(w), 2.0) == 0.5);
  }
}

namespace {
// brute-force enumeration of monotone words
std::uint64_t brute_count(unsigned n, unsigned ell, unsigned min_digit = 1) {
  if (n == 0) return 1;
  std::uint64_t total = 0;
  for (unsigned a = min_digit; a <= ell; ++a) total += brute_count(n - 1, ell, a);
  return total;
}
}  // namespace

TEST_CASE("monotone word counts match brute force and Pascal") {
  CHECK(count_monotone_words(1, 5) == 5);
  CHECK(count_monotone_words(2, 3) == 6);
  CHECK(count_monotone_words(3, 2) == 4);
  for (unsigned n = 1; n <= 7; ++n)
    for (unsigned ell = 1; ell <= 7; ++ell)
      CHECK(count_monotone_words(n, ell) == brute_count(n, ell));
  for (unsigned n = 2; n <= 12; ++n)
    for (unsigned ell = 2; ell <= 12; ++ell)
      CHECK(count_monotone_words(n, ell) ==
            count_monotone_words(n - 1, ell) + count_monotone_words(n, ell - 1));
  CHECK_THROWS_AS(count_monotone_words(0, 3), InvalidParameterError);
}
