#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "iifs/exponents.hpp"
#include "iifs/word.hpp"

namespace iifs {

// Digit-box Cantor constructions B({s_n},{r_n},N): points whose n-th digit
// lies in [s_n - r_n, s_n + r_n] for n >= N. The builtin families are the
// proof sequences of the dimension lower bounds.
enum class CantorFamily {
  E0,              // s_n = 2e^n,   r_n = e^n
  PowerAlpha,      // s_n = 2n^(1/alpha),            r_n = n^(1/alpha)
  EAlphaWeighted,  // s_n = 2n^(1/(alpha*sigma_t)),  r_n = n^(1/(alpha*sigma_t))
  Jqdg,            // s_n = (2n+1)n^(alpha/sigma_t - 1), r_n = n^(alpha/sigma_t - 1)
  InfinityBranch,  // s_n = (2n+1)e^n, r_n = e^n
  Tabulated,
};

struct CantorSpec {
  CantorFamily family = CantorFamily::E0;
  double alpha = 0.0;
  double sigma_t = 0.0;
  std::size_t start_index = 1;  // N; digits below it are fixed to 1
  std::vector<double> tab_s, tab_r;

  double log_s(std::size_t n) const;
  double log_r(std::size_t n) const;
  double s(std::size_t n) const;  // linear value; may overflow for e^n families
  double r(std::size_t n) const;
};

CantorSpec builtin_cantor_spec(CantorFamily family, double alpha = 0.0,
                               double sigma_t = 0.0, std::size_t start_index = 1);
CantorFamily cantor_family_from_name(const std::string& name);
std::string cantor_family_name(CantorFamily family);
// Tabulated sequences; hypothesis violations on the prefix are reported as
// warnings, not errors (a finite prefix cannot certify asymptotics).
CantorSpec tabulated_cantor_spec(std::vector<double> s, std::vector<double> r,
                                 std::vector<std::string>* warnings = nullptr);

struct CantorSample {
  DigitWord digits;
  double monotone_violation_rate = 0.0;  // fraction of descents among steps
  std::size_t resamples = 0;             // whole-word redraws in rejection mode
};

// Digits drawn uniformly from [ceil(s_n - r_n), floor(s_n + r_n)] for
// n >= N (indices below N fixed to 1). With reject_nonmonotone, redraws the
// word until it is non-decreasing.
CantorSample sample_point(const CantorSpec&, std::size_t n_digits, std::uint64_t seed,
                          bool reject_nonmonotone = false);

struct CantorDimensionEstimate {
  double value_at_nmax = 0.0;
  double running_min_tail = 0.0;  // liminf proxy: min over the tail half
  std::size_t n_max = 0;
};

// The digit-box dimension formula
//   liminf_n  sum_{i<=n} log r_i / (d sum_{i<=n+1} log s_i - log r_{n+1});
// evaluates the ratio at every n <= n_max. Optionally emits the full trace.
CantorDimensionEstimate cantor_dimension_estimate(const CantorSpec&, std::size_t n_max,
                                                  double d,
                                                  std::vector<double>* trace = nullptr);

// Closed-form Hausdorff dimension spectra of the convergence-exponent level
// sets. Levels are 1/d independently of alpha (and of the weights).
double dim_tau1_level(double alpha, double d);
double dim_tau2_level(double alpha, const WeightVector& w, double d);
// Level sets of the liminf digit-product ratio inside the monotone set:
// 0 below sigma_t, (alpha - sigma_t)/(d alpha) up to infinity, 1/d at infinity.
double dim_monotone_product_level(double alpha, double sigma_t, double d);
double dim_monotone_product_level(double alpha, const WeightVector& w, double d);
// The limit and limsup variants have identical spectra.
double dim_monotone_product_level_limit(double alpha, double sigma_t, double d);
double dim_monotone_product_level_limsup(double alpha, double sigma_t, double d);

// #{(a_1..a_n): 1 <= a_1 <= ... <= a_n <= ell} = binom(n+ell-1, n), exact.
mpz_class count_monotone_words(unsigned long n, unsigned long ell);

}  // namespace iifs
