#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iifs/system.hpp"

namespace iifs {

struct CriticalExponent {
  double s_star = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0;
  std::uint64_t M = 2;
  double tol = 0.0;
};

// Root of the per-letter cover sum sum_{b>=M} c2^s b^{-ds} = 1. Always
// exceeds 1/d and decreases to 1/d as M grows.
CriticalExponent good_critical_exponent(double d, double c2, std::uint64_t M, double tol);

struct ProductSetBound {
  double s = 0.0;          // (t+eps)/d
  double log_M_min = 0.0;  // threshold log M making the cover sum summable
  std::optional<std::uint64_t> M_min;
};
// Cover exponent for the product sets: s = (t+eps)/d together with the
// smallest digit threshold M satisfying
//   ((t+eps)/d) log c2 + log zeta(t) < eps log M/(m+1).
ProductSetBound product_set_upper_bound(double d, double c2, unsigned m, double t,
                                        double eps);

struct MonotoneFamilyBound {
  std::uint64_t ell = 0;        // digit ceiling floor(k^((alpha+s)/sigma_t))
  double log_exact_count = 0.0;  // log binom(k+ell-1, k)
  double log_bound = 0.0;        // (1+log k) k^((alpha+s)/sigma_t)
};
// Cardinality of the monotone word family with digits capped at
// k^((alpha+s)/sigma_t): exact count and the closed exponential bound.
MonotoneFamilyBound dk_cardinality_bound(std::uint64_t k, double alpha, double s,
                                         double sigma_t);

enum class CoverFamilyKind { GoodFM, Dk, DkTilde };

struct CoverFamilySpec {
  CoverFamilyKind kind = CoverFamilyKind::GoodFM;
  std::uint64_t M = 2;    // GoodFM: all digits >= M
  double alpha = 0.0;     // Dk / DkTilde level
  double sigma_t = 1.0;   // weight sum
  double eps = 1e-2;      // DkTilde margin
  unsigned m = 1;         // DkTilde weight window length
};
CoverFamilyKind cover_family_from_name(const std::string& name);

struct CoverSumProfile {
  std::vector<double> s_grid;
  std::vector<double> log_sums;
  std::uint64_t k = 0;
  CoverFamilySpec family;
  std::optional<double> crossing;  // s where the truncated sum crosses 1
};

// Truncated cover sums at depth k over an s-grid, evaluated through the
// cylinder upper bounds (per-letter closed forms for the unbounded Good-type
// alphabet; count x length bounds for the monotone families). The reported
// crossing is the empirical critical exponent at this depth.
CoverSumProfile hausdorff_sum_scan(const GaussLikeSystem&, const CoverFamilySpec&,
                                   std::uint64_t k, std::span<const double> s_grid);

struct SubdivisionBound {
  double value = 0.0;
  std::uint64_t argmax_k = 0;
};
// max over 0 <= k <= n-1 of (k+1)(alpha-sigma_t)/(d((n-k)sigma_t + k alpha));
// the maximum sits at k = n-1 and tends to (alpha-sigma_t)/(d alpha).
SubdivisionBound subdivision_dimension_bound(double alpha, double sigma_t, double d,
                                             std::uint64_t n);

// sum_{b >= M} b^-x in double precision (zeta minus a partial sum).
double zeta_tail_from_d(double x, std::uint64_t M);

}  // namespace iifs
