#include "iifs/measures.hpp"

#include <algorithm>
#include <cmath>

namespace iifs {

Interval zeta_enclosure(double t, prec_t precision) { return zeta_point(t, precision); }

double zeta_value(double t) { return zeta_enclosure(t, 64).mid_d(); }

Interval zeta_by_truncation(double t, std::uint64_t terms, prec_t precision) {
  if (t <= 1.0) throw DivergenceError("zeta diverges for t <= 1");
  Interval sum(precision);
  for (std::uint64_t k = 1; k <= terms; ++k) {
    Interval kv = Interval::point_ui(k, precision);
    sum = add(sum, pow_d(kv, -t));
  }
  // tail in [(K+1)^(1-t), K^(1-t)] / (t-1)
  Interval klo = Interval::point_ui(terms + 1, precision);
  Interval khi = Interval::point_ui(terms, precision);
  Interval tail = hull(pow_d(klo, 1.0 - t), pow_d(khi, 1.0 - t));
  tail = div(tail, Interval(t - 1.0, precision));
  return add(sum, tail);
}

Interval zeta_tail_from(double t, std::uint64_t M, prec_t precision) {
  if (t <= 1.0) throw DivergenceError("zeta tail diverges for t <= 1");
  Interval z = zeta_enclosure(t, precision);
  Interval partial(precision);
  for (std::uint64_t k = 1; k < M; ++k) {
    Interval kv = Interval::point_ui(k, precision);
    partial = add(partial, pow_d(kv, -t));
  }
  Interval tail = sub(z, partial);
  if (mpfr_sgn(tail.lo_raw()) < 0) mpfr_set_zero(tail.lo_raw(), 1);
  return tail;
}

GibbsMeasureSpec make_gibbs_spec(double t, prec_t precision) {
  if (!(t > 1.0 + 1e-6)) throw DivergenceError("Gibbs measures need t > 1");
  return {t, log(zeta_enclosure(t, precision)).mid_d()};
}

double gibbs_log_mass(const GibbsMeasureSpec& spec, const DigitWord& word) {
  validate_word(word);
  if (word.empty()) throw InvalidParameterError("word must be non-empty");
  double acc = -double(word.size()) * spec.log_zeta;
  for (auto a : word) acc -= spec.t * std::log(double(a));
  return acc;
}

double gibbs_mass(const GibbsMeasureSpec& spec, const DigitWord& word) {
  return std::exp(gibbs_log_mass(spec, word));
}

double gibbs_mass_check(const GibbsMeasureSpec& spec, unsigned n, std::uint64_t digit_cap) {
  if (n == 0 || digit_cap == 0) throw InvalidParameterError("need n >= 1 and cap >= 1");
  // per-letter mass sum_{a<=cap} a^-t / zeta(t), then the power identity
  double partial = 0.0;
  for (std::uint64_t a = 1; a <= digit_cap; ++a) partial += std::pow(double(a), -spec.t);
  double per_letter = partial / std::exp(spec.log_zeta);
  return std::pow(per_letter, double(n));
}

// ---------------------------------------------------------------------------
// Pressure
// ---------------------------------------------------------------------------

namespace {

// certified sum_{a>K} (coef (a+shift)^-d)^t via integral brackets
Interval envelope_tail(const PowerEnvelope& env, double d, double t, std::uint64_t K,
                       prec_t prec) {
  double p = d * t;
  if (p <= 1.0) throw DivergenceError("branch sum diverges: d*t <= 1");
  Interval lo_base = add(Interval::point_ui(K + 1, prec), Interval(env.shift_hi, prec));
  Interval hi_base = add(Interval::point_ui(K, prec), Interval(env.shift_lo, prec));
  Interval lo = mul(pow_d(Interval(env.coef_lo, prec), t), pow_d(lo_base, 1.0 - p));
  Interval hi = mul(pow_d(Interval(env.coef_hi, prec), t), pow_d(hi_base, 1.0 - p));
  Interval denom(p - 1.0, prec);
  return hull(div(lo, denom), div(hi, denom));
}

// certified sum over all branches of q_a^t where q is xi or lambda
Interval branch_power_sum(const GaussLikeSystem& sys, bool use_lambda, double t,
                          std::uint64_t cap, prec_t prec) {
  std::uint64_t head = std::min<std::uint64_t>(cap, 2000);
  Interval sum(prec);
  for (std::uint64_t a = 1; a <= head; ++a) {
    DerivativeBounds db = sys.derivative_bounds(a, prec);
    sum = add(sum, pow_d(use_lambda ? db.lambda : db.xi, t));
  }
  PowerEnvelope env = use_lambda ? sys.lambda_envelope() : sys.xi_envelope();
  return add(sum, envelope_tail(env, sys.d(), t, head, prec));
}

struct WordSums {
  Interval lower_sum;  // sum of inf-range^t over enumerated words
  Interval upper_sum;  // sum of sup-range^t
};

// depth-first enumeration of words with digits <= cap, composing enclosures
void enumerate_words(const GaussLikeSystem& sys, double t, unsigned depth,
                     std::uint64_t cap, const Interval& image, const Interval& deriv_prod,
                     prec_t prec, WordSums& out) {
  for (std::uint64_t a = 1; a <= cap; ++a) {
    Interval dr = sys.derivative_range(a, image);
    Interval prod = mul(deriv_prod, dr);
    Interval next_image = sys.map(a, image);
    if (depth == 1) {
      Interval lo_pt(prec), hi_pt(prec);
      mpfr_set(lo_pt.lo_raw(), prod.lo_raw(), MPFR_RNDD);
      mpfr_set(lo_pt.hi_raw(), prod.lo_raw(), MPFR_RNDU);
      mpfr_set(hi_pt.lo_raw(), prod.hi_raw(), MPFR_RNDD);
      mpfr_set(hi_pt.hi_raw(), prod.hi_raw(), MPFR_RNDU);
      out.lower_sum = add(out.lower_sum, pow_d(lo_pt, t));
      out.upper_sum = add(out.upper_sum, pow_d(hi_pt, t));
    } else {
      enumerate_words(sys, t, depth - 1, cap, next_image, prod, prec, out);
    }
  }
}

}  // namespace

PressureBounds pressure(const GaussLikeSystem& sys, double t, unsigned n,
                        std::uint64_t digit_cap, prec_t precision) {
  double d = sys.d();
  if (!(t * d > 1.0))
    throw DivergenceError("pressure sum diverges: need t > 1/d");
  if (n == 0) throw InvalidParameterError("pressure depth n must be >= 1");
  if (n == 1 || n > 3) {
    // factorized bounds; identical for every depth
    Interval lo = branch_power_sum(sys, /*use_lambda=*/false, t, digit_cap, precision);
    Interval hi = branch_power_sum(sys, /*use_lambda=*/true, t, digit_cap, precision);
    return {log(lo).lo_d(), log(hi).hi_d()};
  }
  std::uint64_t cap = std::min<std::uint64_t>(digit_cap, n == 2 ? 700 : 80);
  WordSums sums{Interval(precision), Interval(precision)};
  enumerate_words(sys, t, n, cap, Interval(0.0, 1.0, precision), Interval(1.0, precision),
                  precision, sums);
  // words with a digit beyond cap: 0 <= missing <= (sum_all lambda^t)^n - (sum_<=cap lambda^t)^n
  Interval all_lam = branch_power_sum(sys, true, t, digit_cap, precision);
  Interval head_lam(precision);
  for (std::uint64_t a = 1; a <= cap; ++a)
    head_lam = add(head_lam, pow_d(sys.derivative_bounds(a, precision).lambda, t));
  Interval all_pow(1.0, precision), head_pow(1.0, precision);
  for (unsigned i = 0; i < n; ++i) {
    all_pow = mul(all_pow, all_lam);
    head_pow = mul(head_pow, head_lam);
  }
  Interval missing = sub(all_pow, head_pow);
  if (mpfr_sgn(missing.lo_raw()) < 0) mpfr_set_zero(missing.lo_raw(), 1);
  Interval upper_total = add(sums.upper_sum, missing);
  double inv_n = 1.0 / double(n);
  return {log(sums.lower_sum).lo_d() * inv_n, log(upper_total).hi_d() * inv_n};
}

Interval log_cylinder_partition_sum(const GaussLikeSystem& sys, double t,
                                    std::uint64_t digit_cap, prec_t precision) {
  double d = sys.d();
  if (!(t * d > 1.0)) throw DivergenceError("partition sum diverges: need t > 1/d");
  Interval sum(precision);
  for (std::uint64_t a = 1; a <= digit_cap; ++a)
    sum = add(sum, pow_d(sys.level1_length(a, precision), t));
  sum = add(sum, envelope_tail(sys.length_envelope(), d, t, digit_cap, precision));
  return log(sum);
}

double pressure_root(const GaussLikeSystem& sys, double t_lo, double t_hi, double tol,
                     std::uint64_t digit_cap, prec_t precision) {
  if (!(t_lo < t_hi) || !(tol > 0)) throw InvalidParameterError("bad bracket or tolerance");
  Interval flo = log_cylinder_partition_sum(sys, t_lo, digit_cap, precision);
  Interval fhi = log_cylinder_partition_sum(sys, t_hi, digit_cap, precision);
  if (!(mpfr_sgn(flo.lo_raw()) > 0 && mpfr_sgn(fhi.hi_raw()) < 0))
    throw BracketError("pressure enclosures do not change sign over the bracket");
  double lo = t_lo, hi = t_hi;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    Interval f = log_cylinder_partition_sum(sys, mid, digit_cap, precision);
    if (f.mid_d() > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Transfer operator on a uniform grid
// ---------------------------------------------------------------------------

namespace {

struct OperatorMatrix {
  std::size_t grid = 0;
  std::vector<double> a;  // row-major grid x grid
};

double tail_mass_pow(const GaussLikeSystem& sys, double x, double t, std::uint64_t cap) {
  if (t == 1.0) return sys.tail_mass_d(x, cap);
  PowerEnvelope env = sys.lambda_envelope();
  double p = sys.d() * t;
  double coef = 0.5 * (env.coef_lo + env.coef_hi);
  return std::pow(coef, t) * std::pow(double(cap) + 0.5 + 0.5 * (env.shift_lo + env.shift_hi),
                                      1.0 - p) / (p - 1.0);
}

OperatorMatrix assemble(const GaussLikeSystem& sys, double t, std::size_t grid,
                        std::uint64_t cap) {
  if (grid < 64) throw InvalidParameterError("grid_size must be >= 64");
  if (grid > 8192) throw InvalidParameterError("grid_size capped at 8192");
  OperatorMatrix M;
  M.grid = grid;
  M.a.assign(grid * grid, 0.0);
  double h = 1.0 / double(grid - 1);
  const bool unit_weight = (t == 1.0);
  for (std::size_t j = 0; j < grid; ++j) {
    double x = double(j) * h;
    double* row = &M.a[j * grid];
    auto scatter = [&](double y, double w) {
      double pos = y / h;
      std::size_t c = std::min<std::size_t>(grid - 2, std::size_t(std::max(0.0, pos)));
      double frac = std::clamp(pos - double(c), 0.0, 1.0);
      row[c] += w * (1.0 - frac);
      row[c + 1] += w * frac;
    };
    for (std::uint64_t i = 1; i <= cap; ++i) {
      double w = sys.derivative_d(i, x);
      if (!unit_weight) w = std::pow(w, t);
      scatter(sys.map_d(i, x), w);
    }
    double tl_mass = tail_mass_pow(sys, x, t, cap);
    double tl_mean = sys.tail_mean_image_d(x, cap);
    scatter(tl_mean, tl_mass);
  }
  return M;
}

std::vector<double> apply_operator(const OperatorMatrix& M, const std::vector<double>& v) {
  std::size_t g = M.grid;
  std::vector<double> out(g, 0.0);
  for (std::size_t j = 0; j < g; ++j) {
    const double* row = &M.a[j * g];
    double acc = 0.0;
    for (std::size_t c = 0; c < g; ++c) acc += row[c] * v[c];
    out[j] = acc;
  }
  return out;
}

}  // namespace

DensityGrid perron_iterate(const GaussLikeSystem& sys, double t, std::size_t grid_size,
                           unsigned iterations, std::uint64_t digit_cap) {
  OperatorMatrix M = assemble(sys, t, grid_size, digit_cap);
  DensityGrid out;
  out.x.resize(grid_size);
  double h = 1.0 / double(grid_size - 1);
  for (std::size_t j = 0; j < grid_size; ++j) out.x[j] = double(j) * h;
  out.g.assign(grid_size, 1.0);
  for (unsigned it = 0; it < iterations; ++it) {
    std::vector<double> next = apply_operator(M, out.g);
    double sup = 0.0;
    for (std::size_t j = 0; j < grid_size; ++j)
      sup = std::max(sup, std::fabs(next[j] - out.g[j]));
    out.sup_diffs.push_back(sup);
    out.g = std::move(next);
  }
  out.iterations = iterations;
  std::size_t m = out.sup_diffs.size();
  out.diverged = m >= 6 && out.sup_diffs[m - 1] > out.sup_diffs[m - 6];
  return out;
}

std::vector<double> perron_apply(const GaussLikeSystem& sys, double t,
                                 const std::vector<double>& values,
                                 std::uint64_t digit_cap) {
  OperatorMatrix M = assemble(sys, t, values.size(), digit_cap);
  return apply_operator(M, values);
}

}  // namespace iifs
