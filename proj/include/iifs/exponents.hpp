#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "iifs/errors.hpp"

namespace iifs {

// Weights (t_0,...,t_m) of the weighted digit products. Standing assumptions:
// all weights nonnegative, t_0 != 0, and at least one t_i != 0 for i >= 1.
class WeightVector {
 public:
  explicit WeightVector(std::vector<double> weights);
  const std::vector<double>& weights() const { return w_; }
  std::size_t m() const { return w_.size() - 1; }
  double sigma() const { return sigma_; }

 private:
  std::vector<double> w_;
  double sigma_;
};

struct ExponentEstimate {
  double value = 0.0;  // +inf permitted
  double ratio_liminf = 0.0;
  double ratio_limsup = 0.0;
  std::size_t window = 0;  // first index (1-based) of the tail window used
  std::size_t n_used = 0;
};

// Convergence exponent of a digit sequence via the monotone-rearrangement
// identity: sort non-decreasingly, then estimate limsup log n / log b_n over
// the tail half. Returns +inf when a single digit value persists with
// positive density in both halves of the raw sequence (a bounded
// subsequence of positive density forces divergence for every s).
ExponentEstimate tau_from_rearrangement(std::span<const std::uint64_t> digits);
// Same estimator on log-scale values (for synthetic families that overflow
// integer digits); values are logs of a sequence >= 1.
ExponentEstimate tau_from_rearrangement_logs(std::vector<double> log_values,
                                             bool persistent_value_seen = false);

struct PartialSumTau {
  double value = 0.0;
  bool at_boundary = false;  // no classification change over the bracket
};
// Independent oracle: classify sum a_n^-s as convergent/divergent from the
// growth of dyadic block sums, then bisect on s.
PartialSumTau tau_by_partial_sums(std::span<const std::uint64_t> digits, double s_lo,
                                  double s_hi, int bisect_iters = 48);
PartialSumTau tau_by_partial_sums_logs(std::span<const double> log_values, double s_lo,
                                       double s_hi, int bisect_iters = 48);

// Weighted-product exponent: forms P_n = prod_i a_{n+i}^{t_i} and applies the
// rearrangement estimator to the products.
ExponentEstimate tau2_from_digits(std::span<const std::uint64_t> digits,
                                  const WeightVector& w);

// Running liminf/limsup of r_n = log P_n / log n over the tail window;
// `value` is the liminf (the level of the monotone-digit ratio sets).
ExponentEstimate ratio_diagnostics(std::span<const std::uint64_t> digits,
                                   const WeightVector& w);

bool is_monotone(std::span<const std::uint64_t> digits);

// log P_n for n = 1..N-m (helper shared with the diagnostics and tests)
std::vector<double> weighted_log_products(std::span<const std::uint64_t> digits,
                                          const WeightVector& w);

}  // namespace iifs
