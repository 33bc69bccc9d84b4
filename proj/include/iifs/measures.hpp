#pragma once

#include <cstdint>
#include <vector>

#include "iifs/system.hpp"
#include "iifs/word.hpp"

namespace iifs {

// Riemann zeta with certified enclosure of width < 2^(1-precision).
Interval zeta_enclosure(double t, prec_t precision = 96);
double zeta_value(double t);
// Independent route: truncated sum plus integral tail bracket
//   sum_{k>K} k^-t in [(K+1)^(1-t), K^(1-t)]/(t-1).
Interval zeta_by_truncation(double t, std::uint64_t terms, prec_t precision = 96);
// sum_{k >= M} k^-t, certified.
Interval zeta_tail_from(double t, std::uint64_t M, prec_t precision = 96);

// The Gibbs-type product measure giving a length-n word mass
// prod_j a_j^-t / zeta(t)^n.
struct GibbsMeasureSpec {
  double t;
  double log_zeta;  // cached log zeta(t)
};
GibbsMeasureSpec make_gibbs_spec(double t, prec_t precision = 96);
double gibbs_log_mass(const GibbsMeasureSpec&, const DigitWord&);
double gibbs_mass(const GibbsMeasureSpec&, const DigitWord&);
// Total mass of all words of length n with digits capped:
// (sum_{a<=cap} a^-t / zeta(t))^n, by the power identity.
double gibbs_mass_check(const GibbsMeasureSpec&, unsigned n, std::uint64_t digit_cap);

struct PressureBounds {
  double lower, upper;
};
// Enclosure of (1/n) log sum_{|w|=n} ||phi_w'||^t from per-branch derivative
// bounds: xi-products below, lambda-products above, integral tail bounds for
// the unbounded alphabet. For n in {2,3} the word sums are evaluated
// exhaustively over digits <= digit_cap with interval chain-rule products
// (tighter than the factorized n = 1 bounds).
PressureBounds pressure(const GaussLikeSystem&, double t, unsigned n = 1,
                        std::uint64_t digit_cap = 100000, prec_t precision = 96);

// Zero of the level-1 cylinder-length partition sum Z(t) = sum_a |I_1(a)|^t,
// located by bisection on the midpoint of its certified enclosure. For every
// full Gauss-like system the root is 1 (the level-1 lengths tile [0,1]).
double pressure_root(const GaussLikeSystem&, double t_lo, double t_hi, double tol,
                     std::uint64_t digit_cap = 4000, prec_t precision = 128);
// log Z(t) enclosure (exposed for bracket checks and tests).
Interval log_cylinder_partition_sum(const GaussLikeSystem&, double t,
                                    std::uint64_t digit_cap = 4000, prec_t precision = 128);

struct DensityGrid {
  std::vector<double> x;
  std::vector<double> g;
  unsigned iterations = 0;
  std::vector<double> sup_diffs;  // successive sup-norm differences
  bool diverged = false;
};

// Iterates the transfer operator L(f)(x) = sum_i |f_i'(x)|^t f(f_i(x)) on the
// constant function 1 over a uniform grid with linear interpolation. The sum
// over branches is truncated at digit_cap with a closed-form tail correction
// (tail mass scattered at the mass-weighted mean image point).
DensityGrid perron_iterate(const GaussLikeSystem&, double t, std::size_t grid_size,
                           unsigned iterations, std::uint64_t digit_cap = 100000);
// One application of the discretized operator to given grid values.
std::vector<double> perron_apply(const GaussLikeSystem&, double t,
                                 const std::vector<double>& values,
                                 std::uint64_t digit_cap = 100000);

// --- Monte Carlo operations (deterministic per-sample seed streams) --------

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t depth_reduced = 0;  // samples that fell short of `depth` trusted digits
};

// Geometric mean of digits along expansions of uniformly sampled points:
// exp(mean over samples of (1/depth) sum_k log a_k), with standard error.
MonteCarloEstimate birkhoff_geometric_mean(const GaussLikeSystem&, std::size_t samples,
                                           std::size_t depth, std::uint64_t seed,
                                           unsigned threads = 0);

struct EvidenceReport {
  double fraction = 0.0;
  std::uint64_t digit_bound = 10;
  double density = 0.01;
  std::size_t samples = 0;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
};

// Fraction of sampled points whose digit sequence keeps a subsequence of
// digits <= digit_bound occupying at least `density` of the indices -- the
// finite-data proxy for an infinite convergence exponent.
EvidenceReport tau_infinity_evidence(const GaussLikeSystem&, std::size_t samples,
                                     std::size_t depth, std::uint64_t seed,
                                     unsigned threads = 0, std::uint64_t digit_bound = 10,
                                     double density = 0.01);

bool has_dense_bounded_digits(const DigitWord& digits, std::uint64_t bound, double density);

// Expansion of a random point drawn with enough random bits for `depth`
// certified digits (used by the Monte Carlo drivers; exposed for tests).
ExpansionResult expand_random_point(const GaussLikeSystem&, std::uint64_t seed,
                                    std::uint64_t stream, std::size_t depth);

}  // namespace iifs
