#include <cmath>

#include "doctest.h"
#include "iifs/measures.hpp"

using namespace iifs;

namespace {
const GaussLikeSystem& cf() {
  static GaussLikeSystem s = make_system(SystemKind::ContinuedFraction);
  return s;
}
const GaussLikeSystem& luroth() {
  static GaussLikeSystem s = make_system(SystemKind::Luroth);
  return s;
}
double gauss_density(double x) { return 1.0 / ((1.0 + x) * std::log(2.0)); }
}  // namespace

TEST_CASE("zeta: classical identities and the truncation oracle") {
  Interval pi = pi_enclosure(128);
  double pi_d = pi.mid_d();
  CHECK(zeta_value(2.0) == doctest::Approx(pi_d * pi_d / 6.0).epsilon(1e-14));
  CHECK(zeta_value(4.0) == doctest::Approx(std::pow(pi_d, 4) / 90.0).epsilon(1e-14));

  // independent truncation + integral tail route agrees
  for (double t : {1.5, 2.0, 3.0, 4.0}) {
    Interval direct = zeta_enclosure(t, 96);
    Interval trunc = zeta_by_truncation(t, 20000, 96);
    CHECK(overlaps(direct, trunc));
    CHECK(trunc.width_d() < 1e-5);
  }

  // the root of zeta(x) = 2 located by the covers module
  CHECK(zeta_value(1.7286472389981836) == doctest::Approx(2.0).epsilon(1e-9));

  CHECK_THROWS_AS(zeta_enclosure(1.0, 64), DivergenceError);
  CHECK_THROWS_AS(make_gibbs_spec(1.0), DivergenceError);
}

TEST_CASE("zeta tails") {
  // sum_{k>=2} k^-2 = zeta(2) - 1
  Interval t2 = zeta_tail_from(2.0, 2, 96);
  CHECK(t2.contains(zeta_value(2.0) - 1.0));
  Interval t10 = zeta_tail_from(2.0, 10, 96);
  CHECK(t10.hi_d() < 0.12);
  CHECK(t10.lo_d() > 0.09);
}

TEST_CASE("Gibbs cylinder masses") {
  GibbsMeasureSpec g2 = make_gibbs_spec(2.0);
  double z2 = zeta_value(2.0);
  CHECK(gibbs_mass(g2, {1}) == doctest::Approx(1.0 / z2).epsilon(1e-12));
  CHECK(gibbs_mass(g2, {1, 1}) == doctest::Approx(1.0 / (z2 * z2)).epsilon(1e-12));

  GibbsMeasureSpec g3 = make_gibbs_spec(3.0);
  CHECK(gibbs_mass(g3, {2}) == doctest::Approx(0.10398842157258843).epsilon(1e-9));

  // product law in log space
  DigitWord w1{3, 1, 4}, w2{1, 5};
  DigitWord cat = w1;
  cat.insert(cat.end(), w2.begin(), w2.end());
  CHECK(gibbs_log_mass(g2, cat) ==
        doctest::Approx(gibbs_log_mass(g2, w1) + gibbs_log_mass(g2, w2)).epsilon(1e-12));
}

TEST_CASE("Gibbs mass check approaches 1 with the digit cap") {
  GibbsMeasureSpec g2 = make_gibbs_spec(2.0);
  CHECK(gibbs_mass_check(g2, 1, 1) == doctest::Approx(1.0 / zeta_value(2.0)).epsilon(1e-12));
  double m3 = gibbs_mass_check(g2, 3, 1000000);
  CHECK(m3 < 1.0);
  CHECK(m3 > 1.0 - 1e-5);
  GibbsMeasureSpec g3 = make_gibbs_spec(3.0);
  CHECK(gibbs_mass_check(g3, 2, 10000) > 0.9999);
  // Kolmogorov consistency: per-letter partial mass is monotone toward 1
  double prev = 0.0;
  for (std::uint64_t cap : {1, 2, 10, 100, 10000}) {
    double cur = gibbs_mass_check(g2, 1, cap);
    CHECK(cur > prev);
    CHECK(cur <= 1.0);
    prev = cur;
  }
}

TEST_CASE("pressure enclosures from per-branch bounds") {
  GaussLikeSystem ld2 = make_system(SystemKind::LinearDecay, 2.0);
  PressureBounds p = pressure(ld2, 1.0, 1, 100000, 96);
  CHECK(p.lower <= 0.0);
  CHECK(p.upper >= 0.0);
  CHECK(p.upper - p.lower < 1e-4);  // affine branches: alm ost exact

  PressureBounds pc = pressure(cf(), 1.0, 1, 100000, 96);
  CHECK(pc.lower < 0.0);
  CHECK(pc.upper > 0.0);

  // closed form for affine branches: P(t) = log(zeta(dt)/zeta(d)^t)
  double expect = std::log(zeta_value(1.5) / std::pow(zeta_value(2.0), 0.75));
  PressureBounds p75 = pressure(ld2, 0.75, 1, 100000, 96);
  CHECK(p75.lower <= expect);
  CHECK(p75.upper >= expect);

  CHECK_THROWS_AS(pressure(ld2, 0.5, 1), DivergenceError);
}

TEST_CASE("pressure upper bound decreases in t") {
  GaussLikeSystem ld2 = make_system(SystemKind::LinearDecay, 2.0);
  double prev = pressure(ld2, 0.7, 1).upper;
  for (double t : {0.8, 0.9, 1.0, 1.1, 1.3}) {
    double cur = pressure(ld2, t, 1).upper;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("exhaustive word depth tightens the continued-fraction enclosure") {
  PressureBounds p1 = pressure(cf(), 1.0, 1, 100000, 96);
  PressureBounds p3 = pressure(cf(), 1.0, 3, 100000, 96);
  CHECK(p3.lower >= p1.lower - 1e-12);
  CHECK(p3.upper <= p1.upper + 1e-12);
  CHECK(p3.lower <= 0.0);
  CHECK(p3.upper >= 0.0);
}

TEST_CASE("pressure root is 1 for full systems") {
  for (double d : {2.0, 2.5, 3.0}) {
    GaussLikeSystem ld = make_system(SystemKind::LinearDecay, d);
    CHECK(pressure_root(ld, 0.8, 1.2, 1e-7) == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(pressure_root(cf(), 0.8, 1.2, 1e-7) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(pressure_root(luroth(), 0.8, 1.2, 1e-7) == doctest::Approx(1.0).epsilon(1e-6));
  GaussLikeSystem qg = make_system(SystemKind::QuadraticGauss);
  CHECK(pressure_root(qg, 0.8, 1.2, 1e-7) == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(pressure_root(cf(), 1.05, 1.2, 1e-7), BracketError);
}

TEST_CASE("transfer operator: zero iterations return the initial density") {
  DensityGrid g = perron_iterate(cf(), 1.0, 128, 0, 1000);
  for (double v : g.g) CHECK(v == 1.0);
  CHECK(g.iterations == 0);
}

TEST_CASE("Luroth transfer operator fixes the constant density") {
  std::vector<double> ones(1024, 1.0);
  std::vector<double> image = perron_apply(luroth(), 1.0, ones, 100000);
  double sup = 0.0;
  for (double v : image) sup = std::max(sup, std::fabs(v - 1.0));
  CHECK(sup < 1e-6);
}

TEST_CASE("continued fractions converge to the Gauss density") {
  DensityGrid g = perron_iterate(cf(), 1.0, 1024, 25, 50000);
  double sup = 0.0;
  for (std::size_t i = 0; i < g.x.size(); ++i)
    sup = std::max(sup, std::fabs(g.g[i] - gauss_density(g.x[i])));
  CHECK(sup < 5e-4);
  CHECK(!g.diverged);
  CHECK(g.g.front() == doctest::Approx(1.0 / std::log(2.0)).epsilon(1e-3));
  // successive differences decay
  CHECK(g.sup_diffs.back() < 1e-8);
}

TEST_CASE("the Gauss density is a fixed point of one application") {
  std::size_t grid = 2048;
  std::vector<double> vals(grid);
  for (std::size_t j = 0; j < grid; ++j)
    vals[j] = gauss_density(double(j) / double(grid - 1));
  std::vector<double> image = perron_apply(cf(), 1.0, vals, 100000);
  double sup = 0.0;
  for (std::size_t j = 0; j < grid; ++j) sup = std::max(sup, std::fabs(image[j] - vals[j]));
  CHECK(sup < 1e-4);
}

TEST_CASE("iteration preserves total mass within quadrature error") {
  DensityGrid g = perron_iterate(cf(), 1.0, 1024, 12, 50000);
  auto trapezoid = [&](const std::vector<double>& v) {
    double h = 1.0 / double(v.size() - 1);
    double acc = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += v[i];
    return acc * h;
  };
  CHECK(trapezoid(g.g) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("random point expansion is deterministic per seed and stream") {
  ExpansionResult a = expand_random_point(cf(), 99, 5, 50);
  ExpansionResult b = expand_random_point(cf(), 99, 5, 50);
  CHECK(a.digits == b.digits);
  ExpansionResult c = expand_random_point(cf(), 99, 6, 50);
  CHECK(a.digits != c.digits);
  CHECK(a.trusted_count == 50);
}

TEST_CASE("geometric-mean Monte Carlo smoke runs") {
  MonteCarloEstimate est = birkhoff_geometric_mean(cf(), 60, 300, 123, 2);
  CHECK(est.depth_reduced == 0);
  CHECK(est.estimate == doctest::Approx(2.6854520010).epsilon(0.05));
  CHECK(est.stderr_ > 0.0);
  CHECK(est.stderr_ < 0.2);

  // Luroth: exp(sum_k log k / (k(k+1))) from the exact invariant density
  double series = 0.0;
  for (double k = 2.0; k < 2e6; ++k) series += std::log(k) / (k * (k + 1.0));
  double expect = std::exp(series);
  MonteCarloEstimate lu = birkhoff_geometric_mean(luroth(), 60, 300, 123, 2);
  CHECK(std::fabs(lu.estimate - expect) < std::max(3.0 * lu.stderr_, 0.05));
}

TEST_CASE("depth-1 degenerate mean matches the level-1 quadrature") {
  // E[log a_1] = sum_k log k |I_1(k)| for uniform x
  double expect = 0.0;
  for (double k = 2.0; k < 1e6; ++k)
    expect += std::log(k) * (1.0 / k - 1.0 / (k + 1.0));
  MonteCarloEstimate est = birkhoff_geometric_mean(cf(), 4000, 1, 321, 2);
  CHECK(std::fabs(std::log(est.estimate) - expect) < 0.1);
}

TEST_CASE("bounded-digit evidence") {
  // a hand-built point with strictly growing digits contributes nothing
  DigitWord growing;
  for (std::uint64_t n = 1; n <= 2000; ++n) growing.push_back(n);
  CHECK(!has_dense_bounded_digits(growing, 10, 0.01));
  DigitWord cf_like(2000, 1);
  CHECK(has_dense_bounded_digits(cf_like, 10, 0.01));

  EvidenceReport r = tau_infinity_evidence(cf(), 40, 400, 2024, 2);
  CHECK(r.fraction >= 0.95);
  GaussLikeSystem ld2 = make_system(SystemKind::LinearDecay, 2.0);
  EvidenceReport r2 = tau_infinity_evidence(ld2, 40, 400, 2024, 2);
  CHECK(r2.fraction >= 0.95);
}

TEST_CASE("monte carlo results are worker-count independent") {
  MonteCarloEstimate a = birkhoff_geometric_mean(cf(), 24, 100, 7, 1);
  MonteCarloEstimate b = birkhoff_geometric_mean(cf(), 24, 100, 7, 3);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
}
