#include "iifs/cantor.hpp"

#include <cmath>
#include <limits>

#include "iifs/rng.hpp"

namespace iifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double CantorSpec::log_s(std::size_t n) const {
  double nn = double(n);
  switch (family) {
    case CantorFamily::E0: return std::log(2.0) + nn;
    case CantorFamily::PowerAlpha: return std::log(2.0) + std::log(nn) / alpha;
    case CantorFamily::EAlphaWeighted:
      return std::log(2.0) + std::log(nn) / (alpha * sigma_t);
    case CantorFamily::Jqdg:
      return std::log(2.0 * nn + 1.0) + (alpha / sigma_t - 1.0) * std::log(nn);
    case CantorFamily::InfinityBranch: return std::log(2.0 * nn + 1.0) + nn;
    case CantorFamily::Tabulated:
      if (n == 0 || n > tab_s.size())
        throw InvalidParameterError("tabulated sequence index out of range");
      return std::log(tab_s[n - 1]);
  }
  throw InvalidParameterError("unknown cantor family");
}

double CantorSpec::log_r(std::size_t n) const {
  double nn = double(n);
  switch (family) {
    case CantorFamily::E0: return nn;
    case CantorFamily::PowerAlpha: return std::log(nn) / alpha;
    case CantorFamily::EAlphaWeighted: return std::log(nn) / (alpha * sigma_t);
    case CantorFamily::Jqdg: return (alpha / sigma_t - 1.0) * std::log(nn);
    case CantorFamily::InfinityBranch: return nn;
    case CantorFamily::Tabulated:
      if (n == 0 || n > tab_r.size())
        throw InvalidParameterError("tabulated sequence index out of range");
      return std::log(tab_r[n - 1]);
  }
  throw InvalidParameterError("unknown cantor family");
}

double CantorSpec::s(std::size_t n) const { return std::exp(log_s(n)); }
double CantorSpec::r(std::size_t n) const { return std::exp(log_r(n)); }

CantorSpec builtin_cantor_spec(CantorFamily family, double alpha, double sigma_t,
                               std::size_t start_index) {
  CantorSpec spec;
  spec.family = family;
  spec.alpha = alpha;
  spec.sigma_t = sigma_t;
  spec.start_index = std::max<std::size_t>(1, start_index);
  switch (family) {
    case CantorFamily::E0:
    case CantorFamily::InfinityBranch:
      break;
    case CantorFamily::PowerAlpha:
      if (!(alpha > 0.0) || std::isinf(alpha))
        throw InvalidParameterError("power-alpha family needs 0 < alpha < inf");
      break;
    case CantorFamily::EAlphaWeighted:
      if (!(alpha > 0.0) || !(sigma_t > 0.0) || std::isinf(alpha))
        throw InvalidParameterError("weighted family needs alpha > 0 and sigma_t > 0");
      break;
    case CantorFamily::Jqdg:
      if (!(sigma_t > 0.0) || !(alpha > sigma_t) || std::isinf(alpha))
        throw InvalidParameterError(
            "this construction needs alpha > sigma_t (the boundary case is not covered)");
      break;
    case CantorFamily::Tabulated:
      throw InvalidParameterError("use tabulated_cantor_spec for tabulated sequences");
  }
  return spec;
}

CantorFamily cantor_family_from_name(const std::string& name) {
  if (name == "e0") return CantorFamily::E0;
  if (name == "power-alpha") return CantorFamily::PowerAlpha;
  if (name == "e-alpha-weighted") return CantorFamily::EAlphaWeighted;
  if (name == "jqdg") return CantorFamily::Jqdg;
  if (name == "infinity-branch") return CantorFamily::InfinityBranch;
  if (name == "tabulated") return CantorFamily::Tabulated;
  throw InvalidParameterError("unknown cantor family: " + name);
}

std::string cantor_family_name(CantorFamily family) {
  switch (family) {
    case CantorFamily::E0: return "e0";
    case CantorFamily::PowerAlpha: return "power-alpha";
    case CantorFamily::EAlphaWeighted: return "e-alpha-weighted";
    case CantorFamily::Jqdg: return "jqdg";
    case CantorFamily::InfinityBranch: return "infinity-branch";
    case CantorFamily::Tabulated: return "tabulated";
  }
  return "?";
}

CantorSpec tabulated_cantor_spec(std::vector<double> s, std::vector<double> r,
                                 std::vector<std::string>* warnings) {
  if (s.size() != r.size() || s.empty())
    throw InvalidParameterError("tabulated sequences must be non-empty and equal length");
  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0) || !(r[i] > 0.0))
      throw InvalidParameterError("tabulated sequences must be positive");
    if (!(s[i] > r[i]))
      warn("s_n > r_n violated at n = " + std::to_string(i + 1));
  }
  double liminf_ratio = kInf;
  for (std::size_t i = s.size() / 2; i < s.size(); ++i)
    liminf_ratio = std::min(liminf_ratio, (s[i] - r[i]) / s[i]);
  if (!(liminf_ratio > 0.0))
    warn("liminf (s_n - r_n)/s_n > 0 looks violated on the provided prefix");
  if (s.size() >= 2 && (s.back() < s.front() || r.back() < r.front()))
    warn("sequences do not look like they tend to infinity on the provided prefix");
  CantorSpec spec;
  spec.family = CantorFamily::Tabulated;
  spec.tab_s = std::move(s);
  spec.tab_r = std::move(r);
  return spec;
}

namespace {

std::pair<std::uint64_t, std::uint64_t> digit_box(const CantorSpec& spec, std::size_t n) {
  double sv = spec.s(n), rv = spec.r(n);
  double lo = std::ceil(sv - rv), hi = std::floor(sv + rv);
  if (!std::isfinite(sv) || !std::isfinite(rv) || hi >= 9.0e18)
    throw ConstructionError("digit range overflows 64 bits at index " + std::to_string(n));
  if (lo < 1.0) lo = 1.0;
  if (hi < lo)
    throw ConstructionError("empty digit range at index " + std::to_string(n));
  return {std::uint64_t(lo), std::uint64_t(hi)};
}

}  // namespace

CantorSample sample_point(const CantorSpec& spec, std::size_t n_digits, std::uint64_t seed,
                          bool reject_nonmonotone) {
  if (n_digits < 1) throw InvalidParameterError("need n_digits >= 1");
  CantorSample out;
  Rng rng(seed, 0);
  const std::size_t max_tries = 20000;
  for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
    DigitWord w;
    w.reserve(n_digits);
    std::size_t descents = 0;
    for (std::size_t n = 1; n <= n_digits; ++n) {
      std::uint64_t a = 1;
      if (n >= spec.start_index) {
        auto [lo, hi] = digit_box(spec, n);
        a = rng.uniform_int(lo, hi);
      }
      if (!w.empty() && a < w.back()) ++descents;
      w.push_back(a);
    }
    out.monotone_violation_rate =
        n_digits > 1 ? double(descents) / double(n_digits - 1) : 0.0;
    out.digits = std::move(w);
    if (!reject_nonmonotone || descents == 0) return out;
    out.resamples = attempt + 1;
  }
  throw ConstructionError("rejection sampling failed to produce a monotone word");
}

CantorDimensionEstimate cantor_dimension_estimate(const CantorSpec& spec, std::size_t n_max,
                                                  double d, std::vector<double>* trace) {
  if (n_max < 100) throw InvalidParameterError("need n_max >= 100");
  if (!(d > 1.0)) throw InvalidParameterError("need d > 1");
  const std::size_t burn_in = 16;
  double sum_log_s = spec.log_s(1);
  double sum_log_r = 0.0;
  if (trace) trace->clear();
  CantorDimensionEstimate est;
  est.n_max = n_max;
  std::vector<double> ratios;
  ratios.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    double lr = spec.log_r(n);
    if (n > burn_in && lr <= 0.0)
      throw DegenerateSequenceError("log r_n <= 0 at n = " + std::to_string(n));
    sum_log_r += lr;
    double lr_next = spec.log_r(n + 1);
    sum_log_s += spec.log_s(n + 1);
    double ratio = sum_log_r / (d * sum_log_s - lr_next);
    ratios.push_back(ratio);
    if (trace) trace->push_back(ratio);
  }
  est.value_at_nmax = ratios.back();
  double mn = kInf;
  for (std::size_t n = n_max / 2; n <= n_max; ++n) mn = std::min(mn, ratios[n - 1]);
  est.running_min_tail = mn;
  return est;
}

// ---------------------------------------------------------------------------
// Spectrum formulas
// ---------------------------------------------------------------------------

namespace {
void check_d(double d) {
  if (!(d > 1.0)) throw InvalidParameterError("decay exponent d must exceed 1");
}
}  // namespace

double dim_tau1_level(double alpha, double d) {
  check_d(d);
  if (std::isinf(alpha))
    throw InvalidParameterError("the level-set formula covers finite levels only");
  if (!(alpha >= 0.0)) throw InvalidParameterError("alpha must be >= 0");
  return 1.0 / d;
}

double dim_tau2_level(double alpha, const WeightVector& w, double d) {
  check_d(d);
  (void)w;  // validated on construction; the value does not depend on it
  if (std::isinf(alpha))
    throw InvalidParameterError("the level-set formula covers finite levels only");
  if (!(alpha >= 0.0)) throw InvalidParameterError("alpha must be >= 0");
  return 1.0 / d;
}

double dim_monotone_product_level(double alpha, double sigma_t, double d) {
  check_d(d);
  if (!(sigma_t > 0.0)) throw InvalidParameterError("sigma_t must be positive");
  if (!(alpha >= 0.0)) throw InvalidParameterError("alpha must be >= 0");
  if (std::isinf(alpha)) return 1.0 / d;
  if (alpha < sigma_t) return 0.0;
  return (alpha - sigma_t) / (d * alpha);
}

double dim_monotone_product_level(double alpha, const WeightVector& w, double d) {
  return dim_monotone_product_level(alpha, w.sigma(), d);
}

double dim_monotone_product_level_limit(double alpha, double sigma_t, double d) {
  return dim_monotone_product_level(alpha, sigma_t, d);
}

double dim_monotone_product_level_limsup(double alpha, double sigma_t, double d) {
  return dim_monotone_product_level(alpha, sigma_t, d);
}

mpz_class count_monotone_words(unsigned long n, unsigned long ell) {
  if (n < 1 || ell < 1) throw InvalidParameterError("need n >= 1 and ell >= 1");
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n + ell - 1, n);
  return out;
}

}  // namespace iifs
