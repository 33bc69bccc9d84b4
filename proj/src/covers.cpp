#include "iifs/covers.hpp"

#include <cmath>
#include <limits>

#include "iifs/measures.hpp"

namespace iifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double zeta_tail_from_d(double x, std::uint64_t M) {
  if (!(x > 1.0)) return kInf;
  double z = zeta_value(x);
  double partial = 0.0;
  for (std::uint64_t b = 1; b < M; ++b) partial += std::pow(double(b), -x);
  return std::max(0.0, z - partial);
}

CriticalExponent good_critical_exponent(double d, double c2, std::uint64_t M, double tol) {
  if (!(d > 1.0)) throw InvalidParameterError("need d > 1");
  if (M < 2) throw InvalidParameterError("need M >= 2");
  if (!(c2 > 0.0) || !(tol > 0.0)) throw InvalidParameterError("need c2 > 0 and tol > 0");
  auto letter_sum = [&](double s) {
    return std::pow(c2, s) * zeta_tail_from_d(d * s, M);
  };
  double lo = 1.0 / d * (1.0 + 1e-12);
  // the sum blows up as s -> 1/d+, so walk lo up until it exceeds 1
  while (!(letter_sum(lo) > 1.0)) {
    lo += tol;
    if (lo > 64.0) throw BracketError("per-letter sum never exceeds 1 above 1/d");
  }
  double hi = std::max(1.0, lo + 0.5);
  int guard = 0;
  while (letter_sum(hi) > 1.0) {
    hi *= 2.0;
    if (++guard > 60) throw BracketError("no root above 1/d: per-letter sum stays above 1");
  }
  CriticalExponent out;
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.M = M;
  out.tol = tol;
  while (hi - lo > tol * 0.25) {
    double mid = 0.5 * (lo + hi);
    if (letter_sum(mid) > 1.0)
      lo = mid;
    else
      hi = mid;
  }
  out.s_star = 0.5 * (lo + hi);
  return out;
}

ProductSetBound product_set_upper_bound(double d, double c2, unsigned m, double t,
                                        double eps) {
  if (!(d > 1.0) || m < 1) throw InvalidParameterError("need d > 1 and m >= 1");
  if (!(t > 1.0)) throw InvalidParameterError("need t > 1");
  if (!(eps > 0.0)) throw InvalidParameterError("need eps > 0");
  ProductSetBound out;
  out.s = (t + eps) / d;
  double lhs = out.s * std::log(c2) + std::log(zeta_value(t));
  out.log_M_min = double(m + 1) / eps * lhs;
  if (out.log_M_min < std::log(2.0e18)) {
    double M = std::floor(std::exp(std::max(0.0, out.log_M_min))) + 1.0;
    out.M_min = std::uint64_t(std::max(1.0, M));
  }
  return out;
}

MonotoneFamilyBound dk_cardinality_bound(std::uint64_t k, double alpha, double s,
                                         double sigma_t) {
  if (k < 2) throw InvalidParameterError("need k >= 2");
  if (!(sigma_t > 0.0) || !(s > 0.0) || !(alpha >= 0.0))
    throw InvalidParameterError("need sigma_t > 0, s > 0, alpha >= 0");
  MonotoneFamilyBound out;
  double expo = (alpha + s) / sigma_t;
  double ell = std::floor(std::pow(double(k), expo));
  if (ell < 1.0) {
    out.ell = 0;
    out.log_exact_count = -kInf;
    out.log_bound = (1.0 + std::log(double(k))) * std::pow(double(k), expo);
    return out;
  }
  out.ell = std::uint64_t(ell);
  double kk = double(k), ee = ell;
  out.log_exact_count = std::lgamma(kk + ee) - std::lgamma(kk + 1.0) - std::lgamma(ee);
  out.log_bound = (1.0 + std::log(kk)) * std::pow(kk, expo);
  return out;
}

CoverFamilyKind cover_family_from_name(const std::string& name) {
  if (name == "good" || name == "good-fm") return CoverFamilyKind::GoodFM;
  if (name == "dk") return CoverFamilyKind::Dk;
  if (name == "dk-tilde") return CoverFamilyKind::DkTilde;
  throw InvalidParameterError("unknown cover family: " + name);
}

CoverSumProfile hausdorff_sum_scan(const GaussLikeSystem& sys, const CoverFamilySpec& fam,
                                   std::uint64_t k, std::span<const double> s_grid) {
  if (k < 2) throw InvalidParameterError("need depth k >= 2");
  if (s_grid.size() < 2) throw InvalidParameterError("need at least two grid points");
  for (std::size_t i = 1; i < s_grid.size(); ++i)
    if (!(s_grid[i] > s_grid[i - 1]))
      throw InvalidParameterError("s grid must be strictly increasing");
  double d = sys.d();
  double c2 = sys.c2_d();
  CoverSumProfile out;
  out.k = k;
  out.family = fam;
  out.s_grid.assign(s_grid.begin(), s_grid.end());

  auto log_sum_at = [&](double s) -> double {
    switch (fam.kind) {
      case CoverFamilyKind::GoodFM: {
        if (fam.M < 2) throw InvalidParameterError("GoodFM needs M >= 2");
        if (!(d * s > 1.0)) return kInf;
        double per_letter = std::pow(c2, s) * zeta_tail_from_d(d * s, fam.M);
        return double(k) * std::log(per_letter);
      }
      case CoverFamilyKind::Dk: {
        MonotoneFamilyBound b = dk_cardinality_bound(k, fam.alpha, s, fam.sigma_t);
        // digits of the covered points eventually exceed c2, so every
        // cylinder in the family obeys |I_k| <= (c2/(c2+1)^d)^k
        double log_len = std::log(c2) - d * std::log(c2 + 1.0);
        return b.log_exact_count + double(k) * s * log_len;
      }
      case CoverFamilyKind::DkTilde: {
        if (!(fam.alpha > fam.eps))
          throw InvalidParameterError("dk-tilde needs alpha > eps");
        if (k <= fam.m) throw InvalidParameterError("dk-tilde needs k > m");
        double up = (fam.alpha + fam.eps) / fam.sigma_t;
        double dn = (fam.alpha - fam.eps) / fam.sigma_t;
        double kk = double(k);
        double log_count = kk * std::log(2.0) + kk * up + (up - 1.0) * std::lgamma(kk + 1.0);
        double log_len = kk * std::log(c2) - d * dn * std::lgamma(kk - double(fam.m) + 1.0);
        return log_count + s * log_len;
      }
    }
    throw InvalidParameterError("unknown cover family");
  };

  out.log_sums.reserve(s_grid.size());
  for (double s : s_grid) out.log_sums.push_back(log_sum_at(s));
  for (std::size_t i = 1; i < out.log_sums.size(); ++i) {
    double a = out.log_sums[i - 1], b = out.log_sums[i];
    if (std::isfinite(a) && std::isfinite(b) && a >= 0.0 && b < 0.0) {
      out.crossing = s_grid[i - 1] + (s_grid[i] - s_grid[i - 1]) * (a / (a - b));
      break;
    }
  }
  return out;
}

SubdivisionBound subdivision_dimension_bound(double alpha, double sigma_t, double d,
                                             std::uint64_t n) {
  if (!(d > 1.0)) throw InvalidParameterError("need d > 1");
  if (!(sigma_t > 0.0) || !(alpha > sigma_t) || std::isinf(alpha))
    throw InvalidParameterError("need sigma_t < alpha < inf");
  if (!(double(n) > (alpha - sigma_t) / sigma_t))
    throw InvalidParameterError("subdivision depth n violates n > (alpha-sigma_t)/sigma_t");
  if (n > 50000000) throw InvalidParameterError("n too large");
  SubdivisionBound out;
  out.value = -kInf;
  for (std::uint64_t kk = 0; kk < n; ++kk) {
    double num = (double(kk) + 1.0) * (alpha - sigma_t);
    double den = d * ((double(n) - double(kk)) * sigma_t + double(kk) * alpha);
    double f = num / den;
    if (f > out.value) {
      out.value = f;
      out.argmax_k = kk;
    }
  }
  return out;
}

}  // namespace iifs
