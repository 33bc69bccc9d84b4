#include "iifs/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace iifs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// A value is "persistent" when it keeps this density in at least 6 of 8
// consecutive blocks of the raw sequence: a stationary digit stream hits a
// fixed value with positive density everywhere, while a slowly growing
// sequence occupies each value only on a vanishing stretch of indices.
constexpr double kPersistentDensity = 0.01;
constexpr std::size_t kPersistenceBlocks = 8;
constexpr std::size_t kPersistenceNeeded = 6;

template <typename T>
bool persistent_value_in(std::span<const T> values) {
  std::size_t n = values.size();
  if (n < 2 * kPersistenceBlocks) return false;
  std::size_t block = n / kPersistenceBlocks;
  std::size_t need =
      std::max<std::size_t>(1, std::size_t(std::ceil(kPersistentDensity * double(block))));
  std::unordered_map<T, std::size_t> hits;  // bitmask of blocks meeting the density
  for (std::size_t b = 0; b < kPersistenceBlocks; ++b) {
    std::unordered_map<T, std::size_t> counts;
    std::size_t end = (b + 1 == kPersistenceBlocks) ? n : (b + 1) * block;
    for (std::size_t i = b * block; i < end; ++i) counts[values[i]] += 1;
    for (const auto& [v, c] : counts)
      if (c >= need) hits[v] += 1;
  }
  for (const auto& [v, c] : hits)
    if (c >= kPersistenceNeeded) return true;
  return false;
}

bool has_persistent_value(std::span<const std::uint64_t> digits) {
  return persistent_value_in(digits);
}

bool has_persistent_log_value(const std::vector<double>& logs) {
  return persistent_value_in(std::span<const double>(logs));
}
}  // namespace

WeightVector::WeightVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.size() < 2)
    throw InvalidParameterError("weight vector needs m >= 1, i.e. at least two entries");
  sigma_ = 0.0;
  bool tail_nonzero = false;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (w_[i] < 0.0 || !std::isfinite(w_[i]))
      throw InvalidParameterError("weights must be finite and nonnegative");
    sigma_ += w_[i];
    if (i >= 1 && w_[i] != 0.0) tail_nonzero = true;
  }
  if (w_[0] == 0.0) throw InvalidParameterError("weight t_0 must be nonzero");
  if (!tail_nonzero)
    throw InvalidParameterError("at least one weight t_i with i >= 1 must be nonzero");
}

ExponentEstimate tau_from_rearrangement_logs(std::vector<double> logs,
                                             bool persistent_value_seen) {
  std::size_t n = logs.size();
  if (n < 10) throw InvalidParameterError("need at least 10 terms");
  std::stable_sort(logs.begin(), logs.end());
  ExponentEstimate est;
  est.n_used = n;
  est.window = n / 2;  // tail half [n/2, n], 1-based
  if (persistent_value_seen) {
    est.value = est.ratio_liminf = est.ratio_limsup = kInf;
    return est;
  }
  double rmin = kInf, rmax = 0.0;
  bool degenerate = false;
  for (std::size_t i = est.window; i <= n; ++i) {
    double lb = logs[i - 1];
    if (lb <= 0.0) {
      degenerate = true;  // log b_n = 0 inside the window
      break;
    }
    double r = std::log(double(i)) / lb;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (degenerate) {
    est.value = est.ratio_liminf = est.ratio_limsup = kInf;
    return est;
  }
  est.ratio_liminf = rmin;
  est.ratio_limsup = rmax;
  est.value = rmax;
  return est;
}

ExponentEstimate tau_from_rearrangement(std::span<const std::uint64_t> digits) {
  for (auto a : digits)
    if (a == 0) throw InvalidParameterError("digits must be >= 1");
  std::vector<double> logs(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) logs[i] = std::log(double(digits[i]));
  return tau_from_rearrangement_logs(std::move(logs), has_persistent_value(digits));
}

namespace {

// Divergence test at exponent s: dyadic block sums B_j; divergent when the
// geometric mean of the last block ratios is >= 1 (block sums of a
// convergent series decay geometrically, of a divergent one do not).
bool diverges_at(std::span<const double> logs, double s) {
  std::size_t n = logs.size();
  std::vector<double> blocks;
  double cur = 0.0;
  std::size_t next = 2, idx = 0;
  while (idx < n) {
    cur += std::exp(-s * logs[idx]);
    ++idx;
    if (idx == next) {  // complete blocks only; a runt would skew the ratio
      blocks.push_back(cur);
      cur = 0.0;
      next *= 2;
    }
  }
  if (blocks.size() < 3) return true;
  int used = 0;
  double logratio = 0.0;
  for (std::size_t j = blocks.size() - 1; j > 0 && used < 3; --j) {
    if (blocks[j] <= 0.0 || blocks[j - 1] <= 0.0) return false;  // underflow: converges
    logratio += std::log(blocks[j] / blocks[j - 1]);
    ++used;
  }
  return logratio / used >= 0.0;
}

PartialSumTau bisect_tau(std::span<const double> logs, double s_lo, double s_hi,
                         int iters) {
  if (!(s_lo < s_hi)) throw InvalidParameterError("need s_lo < s_hi");
  PartialSumTau out;
  bool div_lo = diverges_at(logs, s_lo);
  bool div_hi = diverges_at(logs, s_hi);
  if (!div_lo) {
    out.value = s_lo;
    out.at_boundary = true;
    return out;
  }
  if (div_hi) {
    out.value = s_hi;
    out.at_boundary = true;
    return out;
  }
  double lo = s_lo, hi = s_hi;
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    if (diverges_at(logs, mid))
      lo = mid;
    else
      hi = mid;
  }
  out.value = 0.5 * (lo + hi);
  return out;
}

}  // namespace

PartialSumTau tau_by_partial_sums_logs(std::span<const double> log_values, double s_lo,
                                       double s_hi, int bisect_iters) {
  if (log_values.size() < 16) throw InvalidParameterError("need at least 16 terms");
  return bisect_tau(log_values, s_lo, s_hi, bisect_iters);
}

PartialSumTau tau_by_partial_sums(std::span<const std::uint64_t> digits, double s_lo,
                                  double s_hi, int bisect_iters) {
  std::vector<double> logs(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) throw InvalidParameterError("digits must be >= 1");
    logs[i] = std::log(double(digits[i]));
  }
  return bisect_tau(logs, s_lo, s_hi, bisect_iters);
}

std::vector<double> weighted_log_products(std::span<const std::uint64_t> digits,
                                          const WeightVector& w) {
  std::size_t m = w.m();
  if (digits.size() <= m + 10)
    throw InvalidParameterError("digit sequence too short for the weight window");
  std::vector<double> logd(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] == 0) throw InvalidParameterError("digits must be >= 1");
    logd[i] = std::log(double(digits[i]));
  }
  std::size_t count = digits.size() - m;
  std::vector<double> out(count);
  const auto& tw = w.weights();
  for (std::size_t nidx = 0; nidx < count; ++nidx) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= m; ++i) acc += tw[i] * logd[nidx + i];
    out[nidx] = acc;
  }
  return out;
}

ExponentEstimate tau2_from_digits(std::span<const std::uint64_t> digits,
                                  const WeightVector& w) {
  std::vector<double> logp = weighted_log_products(digits, w);
  bool persistent = has_persistent_log_value(logp);
  return tau_from_rearrangement_logs(std::move(logp), persistent);
}

ExponentEstimate ratio_diagnostics(std::span<const std::uint64_t> digits,
                                   const WeightVector& w) {
  std::vector<double> logp = weighted_log_products(digits, w);
  std::size_t count = logp.size();
  ExponentEstimate est;
  est.n_used = count;
  est.window = std::max<std::size_t>(2, count / 2);
  double rmin = kInf, rmax = -kInf;
  for (std::size_t n = est.window; n <= count; ++n) {
    double r = logp[n - 1] / std::log(double(n));
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  est.ratio_liminf = rmin;
  est.ratio_limsup = rmax;
  est.value = rmin;
  return est;
}

bool is_monotone(std::span<const std::uint64_t> digits) {
  for (std::size_t i = 1; i < digits.size(); ++i)
    if (digits[i] < digits[i - 1]) return false;
  return true;
}

}  // namespace iifs
