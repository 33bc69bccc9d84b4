#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "iifs/interval.hpp"
#include "iifs/word.hpp"

namespace iifs {

enum class SystemKind { ContinuedFraction, Luroth, QuadraticGauss, LinearDecay };

struct DerivativeBounds {
  Interval xi;      // certified lower bound of |f_i'| on [0,1]
  Interval lambda;  // certified upper bound
};

// Certified power-law envelope of a per-branch quantity q(a):
//   coef_lo * (a + shift_hi)^-d  <=  q(a)  <=  coef_hi * (a + shift_lo)^-d.
// Used for integral tail bounds of sums over the unbounded branch alphabet.
struct PowerEnvelope {
  double coef_lo, coef_hi;
  double shift_lo, shift_hi;
};

class BranchFamily;

// An immutable d-decaying Gauss-like system on [0,1]: countably many
// monotone branches f_1, f_2, ... whose images tile [0,1] in decreasing
// order and whose derivatives decay like i^-d. Safe to share across
// threads; all operations are pure.
class GaussLikeSystem {
 public:
  SystemKind kind() const;
  std::string name() const;
  double d() const;
  bool increasing_branches() const;

  // Certified constants of the cylinder length sandwich
  //   c1^n prod a_i^-d <= |I_n| <= c2^n prod a_i^-d.
  Interval c1(prec_t prec = 96) const;
  Interval c2(prec_t prec = 96) const;
  double c1_d() const;  // rounded down (still a valid lower constant)
  double c2_d() const;  // rounded up
  std::optional<double> kappa() const;  // bounded-distortion constant, where certified

  Interval map(std::uint64_t i, const Interval& x) const;          // f_i(x)
  Interval inverse_map(std::uint64_t i, const Interval& y) const;  // f_i^{-1}(y)
  // Left endpoint of I_1(i); the images tile as I_1(i) = [b(i), b(i-1)], b(0)=1.
  Interval cylinder_boundary(std::uint64_t i, prec_t prec) const;
  Interval level1_length(std::uint64_t i, prec_t prec) const;
  DerivativeBounds derivative_bounds(std::uint64_t i, prec_t prec = 96) const;
  // Enclosure of { |f_i'(x)| : x in X }.
  Interval derivative_range(std::uint64_t i, const Interval& x) const;

  PowerEnvelope xi_envelope() const;
  PowerEnvelope lambda_envelope() const;
  PowerEnvelope length_envelope() const;

  // double-precision fast paths for grid numerics
  double map_d(std::uint64_t i, double x) const;
  double derivative_d(std::uint64_t i, double x) const;
  double tail_mass_d(double x, std::uint64_t cap) const;        // sum_{i>cap} |f_i'(x)|
  double tail_mean_image_d(double x, std::uint64_t cap) const;  // mass-weighted mean of f_i(x) over the tail

  explicit GaussLikeSystem(std::shared_ptr<const BranchFamily> fam);

 private:
  std::shared_ptr<const BranchFamily> fam_;
};

GaussLikeSystem make_system(SystemKind kind, std::optional<double> d = std::nullopt);
// JSON config object, e.g. {"kind": "linear_decay", "d": 2.5} or
// {"kind": "continued_fraction"}. Shorthand names cf/luroth/qg/ld accepted.
GaussLikeSystem system_from_json(const std::string& json_text);
SystemKind system_kind_from_name(const std::string& name);
std::string system_kind_name(SystemKind kind);

struct ExpansionResult {
  DigitWord digits;
  std::size_t trusted_count = 0;
  // an exact endpoint tie was broken toward the smaller branch index
  bool ambiguous = false;
  prec_t precision_used = 0;
};

// First n digits of the symbolic expansion of x in (0,1). Digits are located
// by exponential search + bisection over the branch index (the images are
// ordered), then the iterate is mapped through the branch inverse with
// directed rounding. trusted_count reports how many digits are certified by
// the enclosure; afterwards the expansion continues from the midpoint,
// uncertified. precision == 0 selects the adaptive policy
//   64 + ceil(1.5 * sum_k d*log2(a_k+1)),
// re-estimated from observed digits until the request is certified.
ExpansionResult expand(const GaussLikeSystem&, const Interval& x, std::size_t n,
                       prec_t precision = 0);
ExpansionResult expand(const GaussLikeSystem&, double x, std::size_t n, prec_t precision = 0);

// Cylinder I_n(a_1..a_n) = f_{a_1} o ... o f_{a_n}([0,1]) with certified
// endpoint enclosures at the given working precision.
CylinderInterval project(const GaussLikeSystem&, const DigitWord& word, prec_t precision);

// f_i(x) with certified error below 2^-precision.
Interval branch_value(const GaussLikeSystem&, std::uint64_t i, double x, prec_t precision);

struct LengthBounds {
  double log_lower, log_upper;
  double lower, upper;
};
// (c1^n prod a_i^-d, c2^n prod a_i^-d), evaluated in log space.
LengthBounds cylinder_length_bounds(const GaussLikeSystem&, const DigitWord&);
// certified interval version used by the verification suites
std::pair<Interval, Interval> cylinder_length_bounds_enc(const GaussLikeSystem&,
                                                         const DigitWord&, prec_t prec);

}  // namespace iifs
