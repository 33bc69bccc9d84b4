#include <gmp.h>

#include <cmath>
#include <numeric>

#include "iifs/measures.hpp"
#include "iifs/parallel.hpp"
#include "iifs/rng.hpp"

namespace iifs {

namespace {

// Exact dyadic point in (0,1) built from `limbs` random 64-bit words. The
// point carries as much entropy as the working precision, so the leading
// digits of its expansion follow the uniform law.
Interval random_unit_point(std::uint64_t seed, std::uint64_t stream, std::size_t limbs) {
  Rng rng(seed, stream);
  std::vector<std::uint64_t> words(limbs);
  for (auto& w : words) w = rng.next_u64();
  words[0] |= 1ULL;  // low limb odd: strictly inside (0,1)
  if (words[limbs - 1] == 0) words[limbs - 1] = 1;
  mpz_t z;
  mpz_init(z);
  mpz_import(z, limbs, -1 /*lsw first*/, sizeof(std::uint64_t), 0, 0, words.data());
  prec_t p = static_cast<prec_t>(64 * limbs);
  Interval x(p);
  mpfr_set_z_2exp(x.lo_raw(), z, -long(64 * limbs), MPFR_RNDD);
  mpfr_set_z_2exp(x.hi_raw(), z, -long(64 * limbs), MPFR_RNDU);
  mpz_clear(z);
  return x;
}

}  // namespace

ExpansionResult expand_random_point(const GaussLikeSystem& sys, std::uint64_t seed,
                                    std::uint64_t stream, std::size_t depth) {
  double d = sys.d();
  double assumed_bits = 2.5;
  prec_t p = 64 + static_cast<prec_t>(std::ceil(1.5 * d * assumed_bits * double(depth)));
  ExpansionResult best;
  for (int attempt = 0; attempt < 5; ++attempt) {
    std::size_t limbs = (std::size_t(p) + 63) / 64;
    Interval x = random_unit_point(seed, stream, limbs);
    ExpansionResult res;
    try {
      res = expand(sys, x, depth, static_cast<prec_t>(64 * limbs));
    } catch (const AmbiguousExpansionError&) {
      // the dyadic point ran out of digits; retry with more random bits
      p *= 2;
      continue;
    }
    if (res.trusted_count >= depth) return res;
    if (res.trusted_count >= best.trusted_count) best = std::move(res);
    double observed = 0.0;
    for (std::size_t k = 0; k < best.trusted_count; ++k)
      observed += std::log2(double(best.digits[k]) + 1.0);
    double projected = best.trusted_count
                           ? observed * double(depth) / double(best.trusted_count)
                           : assumed_bits * double(depth);
    prec_t want = 64 + static_cast<prec_t>(std::ceil(1.5 * d * projected));
    p = std::max<prec_t>(want, 2 * p);
    if (p > (prec_t{1} << 23)) break;
  }
  return best;
}

MonteCarloEstimate birkhoff_geometric_mean(const GaussLikeSystem& sys, std::size_t samples,
                                           std::size_t depth, std::uint64_t seed,
                                           unsigned threads) {
  if (samples < 1 || depth < 1) throw InvalidParameterError("need samples >= 1, depth >= 1");
  std::vector<double> means(samples, 0.0);
  std::vector<std::uint8_t> reduced(samples, 0);
  parallel_for(samples, threads, [&](std::size_t i) {
    ExpansionResult res = expand_random_point(sys, seed, i, depth);
    std::size_t used = res.trusted_count > 0 ? res.trusted_count : res.digits.size();
    if (used < depth) reduced[i] = 1;
    if (used == 0) return;
    double acc = 0.0;
    for (std::size_t k = 0; k < used; ++k) acc += std::log(double(res.digits[k]));
    means[i] = acc / double(used);
  });
  double mean = std::accumulate(means.begin(), means.end(), 0.0) / double(samples);
  double var = 0.0;
  for (double m : means) var += (m - mean) * (m - mean);
  var = samples > 1 ? var / double(samples - 1) : 0.0;
  double log_se = std::sqrt(var / double(samples));
  MonteCarloEstimate out;
  out.estimate = std::exp(mean);
  out.stderr_ = out.estimate * log_se;
  out.samples = samples;
  out.depth = depth;
  out.seed = seed;
  out.depth_reduced = std::accumulate(reduced.begin(), reduced.end(), std::size_t{0});
  return out;
}

bool has_dense_bounded_digits(const DigitWord& digits, std::uint64_t bound, double density) {
  if (digits.empty()) return false;
  std::size_t count = 0;
  for (auto a : digits)
    if (a <= bound) ++count;
  return double(count) >= density * double(digits.size());
}

EvidenceReport tau_infinity_evidence(const GaussLikeSystem& sys, std::size_t samples,
                                     std::size_t depth, std::uint64_t seed, unsigned threads,
                                     std::uint64_t digit_bound, double density) {
  if (samples < 1 || depth < 1) throw InvalidParameterError("need samples >= 1, depth >= 1");
  std::vector<std::uint8_t> hit(samples, 0);
  parallel_for(samples, threads, [&](std::size_t i) {
    ExpansionResult res = expand_random_point(sys, seed, i, depth);
    hit[i] = has_dense_bounded_digits(res.digits, digit_bound, density) ? 1 : 0;
  });
  EvidenceReport out;
  out.fraction =
      double(std::accumulate(hit.begin(), hit.end(), std::size_t{0})) / double(samples);
  out.digit_bound = digit_bound;
  out.density = density;
  out.samples = samples;
  out.depth = depth;
  out.seed = seed;
  return out;
}

}  // namespace iifs
