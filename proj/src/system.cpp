#include "iifs/system.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "json.hpp"

namespace iifs {

namespace {

Interval one_over_ui(unsigned long k, prec_t prec) {
  Interval r(prec);
  mpfr_set_ui(r.lo_raw(), 1, MPFR_RNDD);
  mpfr_set_ui(r.hi_raw(), 1, MPFR_RNDU);
  mpfr_div_ui(r.lo_raw(), r.lo_raw(), k, MPFR_RNDD);
  mpfr_div_ui(r.hi_raw(), r.hi_raw(), k, MPFR_RNDU);
  return r;
}

Interval unit_interval(prec_t prec) { return Interval(0.0, 1.0, prec); }

Interval midpoint_of(const Interval& x) {
  Interval r(x.precision());
  mpfr_add(r.lo_raw(), x.lo_raw(), x.hi_raw(), MPFR_RNDN);
  mpfr_div_2ui(r.lo_raw(), r.lo_raw(), 1, MPFR_RNDN);
  mpfr_set(r.hi_raw(), r.lo_raw(), MPFR_RNDN);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Branch families
// ---------------------------------------------------------------------------

class BranchFamily {
 public:
  virtual ~BranchFamily() = default;
  virtual SystemKind kind() const = 0;
  virtual double d() const = 0;
  virtual bool increasing() const = 0;
  virtual Interval c1(prec_t prec) const = 0;
  virtual Interval c2(prec_t prec) const = 0;
  virtual std::optional<double> kappa() const = 0;

  virtual Interval map(std::uint64_t a, const Interval& x) const = 0;
  virtual Interval inverse(std::uint64_t a, const Interval& y) const = 0;
  virtual Interval boundary(std::uint64_t a, prec_t prec) const = 0;
  virtual Interval level1_length(std::uint64_t a, prec_t prec) const = 0;
  virtual Interval deriv_range(std::uint64_t a, const Interval& x) const = 0;
  virtual DerivativeBounds deriv_bounds(std::uint64_t a, prec_t prec) const = 0;

  virtual PowerEnvelope xi_envelope() const = 0;
  virtual PowerEnvelope lambda_envelope() const = 0;
  virtual PowerEnvelope length_envelope() const = 0;

  virtual double map_d(std::uint64_t a, double x) const = 0;
  virtual double deriv_d(std::uint64_t a, double x) const = 0;
  virtual double tail_mass_d(double x, std::uint64_t cap) const = 0;
  virtual double tail_mean_image_d(double x, std::uint64_t cap) const = 0;
};

namespace {

// --- continued fractions: f_a(x) = 1/(x+a), decreasing, d = 2 --------------

class CfFamily final : public BranchFamily {
 public:
  SystemKind kind() const override { return SystemKind::ContinuedFraction; }
  double d() const override { return 2.0; }
  bool increasing() const override { return false; }
  Interval c1(prec_t prec) const override { return Interval(0.25, prec); }
  Interval c2(prec_t prec) const override { return Interval(1.0, prec); }
  std::optional<double> kappa() const override { return 4.0; }

  Interval map(std::uint64_t a, const Interval& x) const override {
    return recip(add_ui(x, a));
  }
  Interval inverse(std::uint64_t a, const Interval& y) const override {
    return sub_ui(recip(y), a);
  }
  Interval boundary(std::uint64_t a, prec_t prec) const override {
    return one_over_ui(a + 1, prec);
  }
  Interval level1_length(std::uint64_t a, prec_t prec) const override {
    return div_ui(one_over_ui(a, prec), a + 1);
  }
  Interval deriv_range(std::uint64_t a, const Interval& x) const override {
    Interval t = add_ui(x, a);
    return recip(mul(t, t));
  }
  DerivativeBounds deriv_bounds(std::uint64_t a, prec_t prec) const override {
    Interval lo = one_over_ui(a + 1, prec);
    Interval hi = one_over_ui(a, prec);
    return {mul(lo, lo), mul(hi, hi)};
  }
  PowerEnvelope xi_envelope() const override { return {1.0, 1.0, 1.0, 1.0}; }
  PowerEnvelope lambda_envelope() const override { return {1.0, 1.0, 0.0, 0.0}; }
  PowerEnvelope length_envelope() const override { return {1.0, 1.0, 0.0, 1.0}; }

  double map_d(std::uint64_t a, double x) const override { return 1.0 / (x + double(a)); }
  double deriv_d(std::uint64_t a, double x) const override {
    double t = x + double(a);
    return 1.0 / (t * t);
  }
  double tail_mass_d(double x, std::uint64_t cap) const override {
    return 1.0 / (x + double(cap) + 0.5);
  }
  double tail_mean_image_d(double x, std::uint64_t cap) const override {
    return 0.5 / (x + double(cap) + 0.5);
  }
};

// --- Luroth: f_a(x) = x/(a(a+1)) + 1/(a+1), increasing affine, d = 2 -------

class LurothFamily final : public BranchFamily {
 public:
  SystemKind kind() const override { return SystemKind::Luroth; }
  double d() const override { return 2.0; }
  bool increasing() const override { return true; }
  Interval c1(prec_t prec) const override { return Interval(0.5, prec); }
  Interval c2(prec_t prec) const override { return Interval(1.0, prec); }
  std::optional<double> kappa() const override { return 1.0; }

  Interval map(std::uint64_t a, const Interval& x) const override {
    return add(div_ui(div_ui(x, a), a + 1), one_over_ui(a + 1, x.precision()));
  }
  Interval inverse(std::uint64_t a, const Interval& y) const override {
    return mul_ui(mul_ui(sub(y, one_over_ui(a + 1, y.precision())), a), a + 1);
  }
  Interval boundary(std::uint64_t a, prec_t prec) const override {
    return one_over_ui(a + 1, prec);
  }
  Interval level1_length(std::uint64_t a, prec_t prec) const override {
    return div_ui(one_over_ui(a, prec), a + 1);
  }
  Interval deriv_range(std::uint64_t a, const Interval& x) const override {
    return level1_length(a, x.precision());
  }
  DerivativeBounds deriv_bounds(std::uint64_t a, prec_t prec) const override {
    Interval v = level1_length(a, prec);
    return {v, v};
  }
  PowerEnvelope xi_envelope() const override { return {1.0, 1.0, 0.0, 1.0}; }
  PowerEnvelope lambda_envelope() const override { return {1.0, 1.0, 0.0, 1.0}; }
  PowerEnvelope length_envelope() const override { return {1.0, 1.0, 0.0, 1.0}; }

  double map_d(std::uint64_t a, double x) const override {
    double aa = double(a);
    return x / (aa * (aa + 1.0)) + 1.0 / (aa + 1.0);
  }
  double deriv_d(std::uint64_t a, double) const override {
    double aa = double(a);
    return 1.0 / (aa * (aa + 1.0));
  }
  double tail_mass_d(double, std::uint64_t cap) const override {
    // telescoping, exact
    return 1.0 / (double(cap) + 1.0);
  }
  double tail_mean_image_d(double, std::uint64_t cap) const override {
    return 0.5 / (double(cap) + 1.0);
  }
};

// --- quadratic Gauss: f_a(x) = (x+a)^-2, decreasing, d = 3 -----------------

class QuadraticGaussFamily final : public BranchFamily {
 public:
  SystemKind kind() const override { return SystemKind::QuadraticGauss; }
  double d() const override { return 3.0; }
  bool increasing() const override { return false; }
  Interval c1(prec_t prec) const override { return Interval(0.25, prec); }
  Interval c2(prec_t prec) const override { return Interval(2.0, prec); }
  std::optional<double> kappa() const override { return std::nullopt; }

  Interval map(std::uint64_t a, const Interval& x) const override {
    Interval t = add_ui(x, a);
    return recip(mul(t, t));
  }
  Interval inverse(std::uint64_t a, const Interval& y) const override {
    return sub_ui(recip(sqrt(y)), a);
  }
  Interval boundary(std::uint64_t a, prec_t prec) const override {
    Interval t = Interval::point_ui(a + 1, prec);
    return recip(mul(t, t));
  }
  Interval level1_length(std::uint64_t a, prec_t prec) const override {
    Interval lo = Interval::point_ui(a, prec);
    Interval hi = Interval::point_ui(a + 1, prec);
    return sub(recip(mul(lo, lo)), recip(mul(hi, hi)));
  }
  Interval deriv_range(std::uint64_t a, const Interval& x) const override {
    Interval t = add_ui(x, a);
    return mul_ui(recip(mul(t, mul(t, t))), 2);
  }
  DerivativeBounds deriv_bounds(std::uint64_t a, prec_t prec) const override {
    Interval lo = one_over_ui(a + 1, prec);
    Interval hi = one_over_ui(a, prec);
    return {mul_ui(mul(lo, mul(lo, lo)), 2), mul_ui(mul(hi, mul(hi, hi)), 2)};
  }
  PowerEnvelope xi_envelope() const override { return {2.0, 2.0, 1.0, 1.0}; }
  PowerEnvelope lambda_envelope() const override { return {2.0, 2.0, 0.0, 0.0}; }
  PowerEnvelope length_envelope() const override { return {2.0, 2.0, 0.0, 1.0}; }

  double map_d(std::uint64_t a, double x) const override {
    double t = x + double(a);
    return 1.0 / (t * t);
  }
  double deriv_d(std::uint64_t a, double x) const override {
    double t = x + double(a);
    return 2.0 / (t * t * t);
  }
  double tail_mass_d(double x, std::uint64_t cap) const override {
    double t = x + double(cap) + 0.5;
    return 1.0 / (t * t);
  }
  double tail_mean_image_d(double x, std::uint64_t cap) const override {
    double t = x + double(cap) + 0.5;
    return 0.5 / (t * t);
  }
};

// --- linear d-decaying family ----------------------------------------------
// Partition points p_n = (sum_{k>=n} k^-d)/zeta(d), branch f_n affine
// increasing onto [p_{n+1}, p_n]; |I_1(n)| = n^-d/zeta(d) exactly.

class LinearDecayFamily final : public BranchFamily {
 public:
  explicit LinearDecayFamily(double d) : d_(d) {
    Interval z = zeta_point(d_, 96);
    zeta_d_ = z.mid_d();
  }

  SystemKind kind() const override { return SystemKind::LinearDecay; }
  double d() const override { return d_; }
  bool increasing() const override { return true; }
  Interval c1(prec_t prec) const override { return recip(zeta_enc(prec)); }
  Interval c2(prec_t prec) const override { return recip(zeta_enc(prec)); }
  std::optional<double> kappa() const override { return 1.0; }

  Interval map(std::uint64_t a, const Interval& x) const override {
    prec_t p = x.precision();
    return add(partition_point(a + 1, p), mul(x, level1_length(a, p)));
  }
  Interval inverse(std::uint64_t a, const Interval& y) const override {
    prec_t p = y.precision();
    return div(sub(y, partition_point(a + 1, p)), level1_length(a, p));
  }
  Interval boundary(std::uint64_t a, prec_t prec) const override {
    return partition_point(a + 1, prec);
  }
  Interval level1_length(std::uint64_t a, prec_t prec) const override {
    return div(pow_of_index(a, prec), zeta_enc(prec));
  }
  Interval deriv_range(std::uint64_t a, const Interval& x) const override {
    return level1_length(a, x.precision());
  }
  DerivativeBounds deriv_bounds(std::uint64_t a, prec_t prec) const override {
    Interval v = level1_length(a, prec);
    return {v, v};
  }
  PowerEnvelope xi_envelope() const override {
    double lo = std::nextafter(1.0 / zeta_d_ * (1 - 1e-13), 0.0);
    double hi = 1.0 / zeta_d_ * (1 + 1e-13);
    return {lo, hi, 0.0, 0.0};
  }
  PowerEnvelope lambda_envelope() const override { return xi_envelope(); }
  PowerEnvelope length_envelope() const override { return xi_envelope(); }

  double map_d(std::uint64_t a, double x) const override {
    return partition_point_d(a + 1) + x * std::pow(double(a), -d_) / zeta_d_;
  }
  double deriv_d(std::uint64_t a, double) const override {
    return std::pow(double(a), -d_) / zeta_d_;
  }
  double tail_mass_d(double, std::uint64_t cap) const override {
    return tail_sum_d(cap) / zeta_d_;
  }
  double tail_mean_image_d(double, std::uint64_t cap) const override {
    return 0.5 * tail_mass_d(0.0, cap);
  }

 private:
  double d_;
  double zeta_d_;
  mutable std::mutex mu_;
  mutable std::map<prec_t, Interval> zeta_cache_;
  // partial[k] = sum_{j<=k} j^-d; extended on demand, per working precision
  mutable std::map<prec_t, std::vector<Interval>> partial_cache_;
  mutable std::vector<double> partial_d_cache_{0.0};

  static constexpr std::uint64_t kExactPartialLimit = 4096;

  Interval pow_of_index(std::uint64_t a, prec_t prec) const {
    Interval r(prec);
    mpfr_t base, ex;
    mpfr_init2(base, prec);
    mpfr_init2(ex, 64);
    mpfr_set_uj(base, a, MPFR_RNDN);
    mpfr_set_d(ex, -d_, MPFR_RNDN);
    mpfr_pow(r.lo_raw(), base, ex, MPFR_RNDD);
    mpfr_pow(r.hi_raw(), base, ex, MPFR_RNDU);
    mpfr_clear(base);
    mpfr_clear(ex);
    return r;
  }

  Interval zeta_enc(prec_t prec) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = zeta_cache_.find(prec);
    if (it == zeta_cache_.end())
      it = zeta_cache_.emplace(prec, zeta_point(d_, prec)).first;
    return it->second;
  }

  // certified midpoint-rule tail: sum_{k>K} k^-d in
  //   (K+1/2)^{1-d}/(d-1) + [0, (d/24)(K+1/2)^{-d-1}]
  Interval tail_sum_enc(std::uint64_t K, prec_t prec) const {
    Interval base(prec);
    mpfr_t u, ex;
    mpfr_init2(u, prec);
    mpfr_init2(ex, 64);
    mpfr_set_uj(u, K, MPFR_RNDN);
    mpfr_add_d(u, u, 0.5, MPFR_RNDN);  // exact
    mpfr_set_d(ex, 1.0 - d_, MPFR_RNDN);
    mpfr_pow(base.lo_raw(), u, ex, MPFR_RNDD);
    mpfr_pow(base.hi_raw(), u, ex, MPFR_RNDU);
    mpfr_clear(u);
    mpfr_clear(ex);
    Interval integral = div(base, Interval(d_ - 1.0, prec));
    double rem_hi = (d_ / 24.0) * std::pow(double(K) + 0.5, -d_ - 1.0) * 1.0000001;
    return add(integral, Interval(0.0, rem_hi, prec));
  }

  Interval partial_sum_enc(std::uint64_t a, prec_t prec) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto& v = partial_cache_[prec];
    if (v.empty()) v.push_back(Interval(prec));
    while (v.size() <= a) {
      std::uint64_t k = v.size();
      v.push_back(add(v.back(), pow_of_index(k, prec)));
    }
    return v[a];
  }

  Interval partition_point(std::uint64_t n, prec_t prec) const {
    // p_n = (zeta(d) - sum_{k<n} k^-d)/zeta(d) = tail_{k>=n}/zeta(d)
    if (n == 1) return Interval(1.0, prec);
    Interval z = zeta_enc(prec);
    if (n - 1 <= kExactPartialLimit)
      return div(sub(z, partial_sum_enc(n - 1, prec)), z);
    return div(tail_sum_enc(n - 1, prec), z);
  }

  double tail_sum_d(std::uint64_t K) const {
    return std::pow(double(K) + 0.5, 1.0 - d_) / (d_ - 1.0);
  }

  double partition_point_d(std::uint64_t n) const {
    if (n == 1) return 1.0;
    if (n - 1 <= kExactPartialLimit) {
      std::lock_guard<std::mutex> lk(mu_);
      while (partial_d_cache_.size() <= n - 1) {
        std::uint64_t k = partial_d_cache_.size();
        partial_d_cache_.push_back(partial_d_cache_.back() + std::pow(double(k), -d_));
      }
      return (zeta_d_ - partial_d_cache_[n - 1]) / zeta_d_;
    }
    return tail_sum_d(n - 1) / zeta_d_;
  }
};

}  // namespace

// ---------------------------------------------------------------------------
// GaussLikeSystem
// ---------------------------------------------------------------------------

GaussLikeSystem::GaussLikeSystem(std::shared_ptr<const BranchFamily> fam)
    : fam_(std::move(fam)) {}

SystemKind GaussLikeSystem::kind() const { return fam_->kind(); }
std::string GaussLikeSystem::name() const { return system_kind_name(fam_->kind()); }
double GaussLikeSystem::d() const { return fam_->d(); }
bool GaussLikeSystem::increasing_branches() const { return fam_->increasing(); }
Interval GaussLikeSystem::c1(prec_t prec) const { return fam_->c1(prec); }
Interval GaussLikeSystem::c2(prec_t prec) const { return fam_->c2(prec); }
double GaussLikeSystem::c1_d() const { return fam_->c1(96).lo_d(); }
double GaussLikeSystem::c2_d() const { return fam_->c2(96).hi_d(); }
std::optional<double> GaussLikeSystem::kappa() const { return fam_->kappa(); }

Interval GaussLikeSystem::map(std::uint64_t i, const Interval& x) const {
  if (i == 0) throw InvalidParameterError("branch index must be >= 1");
  return fam_->map(i, x);
}
Interval GaussLikeSystem::inverse_map(std::uint64_t i, const Interval& y) const {
  if (i == 0) throw InvalidParameterError("branch index must be >= 1");
  return fam_->inverse(i, y);
}
Interval GaussLikeSystem::cylinder_boundary(std::uint64_t i, prec_t prec) const {
  if (i == 0) return Interval(1.0, prec);
  return fam_->boundary(i, prec);
}
Interval GaussLikeSystem::level1_length(std::uint64_t i, prec_t prec) const {
  if (i == 0) throw InvalidParameterError("branch index must be >= 1");
  return fam_->level1_length(i, prec);
}
DerivativeBounds GaussLikeSystem::derivative_bounds(std::uint64_t i, prec_t prec) const {
  if (i == 0) throw InvalidParameterError("branch index must be >= 1");
  return fam_->deriv_bounds(i, prec);
}
Interval GaussLikeSystem::derivative_range(std::uint64_t i, const Interval& x) const {
  return fam_->deriv_range(i, x);
}
PowerEnvelope GaussLikeSystem::xi_envelope() const { return fam_->xi_envelope(); }
PowerEnvelope GaussLikeSystem::lambda_envelope() const { return fam_->lambda_envelope(); }
PowerEnvelope GaussLikeSystem::length_envelope() const { return fam_->length_envelope(); }
double GaussLikeSystem::map_d(std::uint64_t i, double x) const { return fam_->map_d(i, x); }
double GaussLikeSystem::derivative_d(std::uint64_t i, double x) const {
  return fam_->deriv_d(i, x);
}
double GaussLikeSystem::tail_mass_d(double x, std::uint64_t cap) const {
  return fam_->tail_mass_d(x, cap);
}
double GaussLikeSystem::tail_mean_image_d(double x, std::uint64_t cap) const {
  return fam_->tail_mean_image_d(x, cap);
}

GaussLikeSystem make_system(SystemKind kind, std::optional<double> d) {
  switch (kind) {
    case SystemKind::ContinuedFraction:
      if (d && *d != 2.0)
        throw InvalidParameterError("continued_fraction has fixed d = 2");
      return GaussLikeSystem(std::make_shared<CfFamily>());
    case SystemKind::Luroth:
      if (d && *d != 2.0) throw InvalidParameterError("luroth has fixed d = 2");
      return GaussLikeSystem(std::make_shared<LurothFamily>());
    case SystemKind::QuadraticGauss:
      if (d && *d != 3.0)
        throw InvalidParameterError("quadratic_gauss has fixed d = 3");
      return GaussLikeSystem(std::make_shared<QuadraticGaussFamily>());
    case SystemKind::LinearDecay:
      if (!d) throw InvalidParameterError("linear_decay requires a decay exponent d");
      if (!(*d > 1.0))
        throw InvalidParameterError("linear_decay requires d > 1");
      return GaussLikeSystem(std::make_shared<LinearDecayFamily>(*d));
  }
  throw InvalidParameterError("unknown system kind");
}

SystemKind system_kind_from_name(const std::string& name) {
  if (name == "continued_fraction" || name == "cf") return SystemKind::ContinuedFraction;
  if (name == "luroth" || name == "lu") return SystemKind::Luroth;
  if (name == "quadratic_gauss" || name == "qg") return SystemKind::QuadraticGauss;
  if (name == "linear_decay" || name == "ld") return SystemKind::LinearDecay;
  throw InvalidParameterError("unknown system kind: " + name);
}

std::string system_kind_name(SystemKind kind) {
  switch (kind) {
    case SystemKind::ContinuedFraction: return "continued_fraction";
    case SystemKind::Luroth: return "luroth";
    case SystemKind::QuadraticGauss: return "quadratic_gauss";
    case SystemKind::LinearDecay: return "linear_decay";
  }
  return "?";
}

GaussLikeSystem system_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const std::exception& e) {
    throw InvalidParameterError(std::string("bad system config JSON: ") + e.what());
  }
  if (j.is_string()) return make_system(system_kind_from_name(j.get<std::string>()));
  if (!j.is_object() || !j.contains("kind"))
    throw InvalidParameterError("system config needs a \"kind\" field");
  SystemKind kind = system_kind_from_name(j["kind"].get<std::string>());
  std::optional<double> d;
  if (j.contains("d")) d = j["d"].get<double>();
  return make_system(kind, d);
}

// ---------------------------------------------------------------------------
// Digit expansion
// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kBranchSearchCap = std::uint64_t{1} << 62;

// Locate the branch whose image contains the midpoint of x. Comparisons use
// midpoints at a small shadow precision; certification happens separately.
std::uint64_t locate_branch(const GaussLikeSystem& fam, const Interval& x, prec_t shadow) {
  Interval m = midpoint_of(x);
  auto boundary_le_m = [&](std::uint64_t a) {
    Interval b = fam.cylinder_boundary(a, shadow);
    // compare midpoint of b with m
    mpfr_t bm;
    mpfr_init2(bm, shadow);
    mpfr_add(bm, b.lo_raw(), b.hi_raw(), MPFR_RNDN);
    mpfr_div_2ui(bm, bm, 1, MPFR_RNDN);
    bool le = mpfr_cmp(bm, m.lo_raw()) <= 0;
    mpfr_clear(bm);
    return le;
  };
  if (boundary_le_m(1)) return 1;
  std::uint64_t lo = 1, hi = 2;
  while (!boundary_le_m(hi)) {
    lo = hi;
    if (hi > kBranchSearchCap)
      throw AmbiguousExpansionError(
          "no branch found below index 2^62; the iterate is at the accumulation point");
    hi *= 2;
  }
  // smallest a in (lo, hi] with boundary(a) <= m
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (boundary_le_m(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

struct StepOutcome {
  std::uint64_t digit;
  bool certified;
  bool tie;
};

StepOutcome certify_digit(const GaussLikeSystem& fam, const Interval& x, std::uint64_t a,
                          prec_t prec) {
  Interval beta_a = fam.cylinder_boundary(a, prec);
  if (identical_point(x, beta_a)) {
    // x is the shared endpoint of I_1(a) and I_1(a+1); keep the smaller index
    return {a, true, true};
  }
  if (a > 1) {
    Interval beta_prev = fam.cylinder_boundary(a - 1, prec);
    if (identical_point(x, beta_prev)) return {a - 1, true, true};
    if (certainly_less(beta_a, x) && certainly_less(x, beta_prev)) return {a, true, false};
    return {a, false, false};
  }
  // a == 1: the right edge is the genuine endpoint 1 of [0,1]
  bool upper_ok = mpfr_cmp_ui(x.hi_raw(), 1) <= 0;
  if (certainly_less(beta_a, x) && upper_ok) return {a, true, false};
  return {a, false, false};
}

ExpansionResult expand_once(const GaussLikeSystem& fam, Interval x, std::size_t n,
                            prec_t prec) {
  ExpansionResult res;
  res.precision_used = prec;
  res.digits.reserve(n);
  const prec_t shadow = 192;
  bool trusted = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (mpfr_sgn(x.hi_raw()) <= 0)
      throw AmbiguousExpansionError("expansion terminated: iterate reached 0 at digit " +
                                    std::to_string(k + 1));
    std::uint64_t a = locate_branch(fam, x, shadow);
    if (trusted) {
      StepOutcome out = certify_digit(fam, x, a, prec);
      if (out.certified) {
        a = out.digit;
        if (out.tie) res.ambiguous = true;
      } else {
        trusted = false;
        res.trusted_count = k;
        x = midpoint_of(x);
      }
    }
    res.digits.push_back(a);
    x = fam.inverse_map(a, x);
    // clamp to the domain; directed rounding can step slightly outside
    if (mpfr_sgn(x.lo_raw()) < 0) mpfr_set_zero(x.lo_raw(), 1);
    if (mpfr_cmp_ui(x.hi_raw(), 1) > 0) mpfr_set_ui(x.hi_raw(), 1, MPFR_RNDU);
    if (mpfr_greater_p(x.lo_raw(), x.hi_raw())) mpfr_set(x.lo_raw(), x.hi_raw(), MPFR_RNDD);
  }
  if (trusted) res.trusted_count = n;
  return res;
}

Interval reround(const Interval& x, prec_t prec) {
  Interval r(prec);
  mpfr_set(r.lo_raw(), x.lo_raw(), MPFR_RNDD);
  mpfr_set(r.hi_raw(), x.hi_raw(), MPFR_RNDU);
  return r;
}

}  // namespace

ExpansionResult expand(const GaussLikeSystem& sys, const Interval& x, std::size_t n,
                       prec_t precision) {
  if (mpfr_sgn(x.lo_raw()) <= 0 || mpfr_cmp_ui(x.hi_raw(), 1) >= 0)
    throw InvalidParameterError("expand requires x strictly inside (0,1)");
  if (n == 0) return {{}, 0, false, precision};

  if (precision > 0) return expand_once(sys, reround(x, precision), n, precision);

  double d = sys.d();
  double assumed_bits = 2.5;  // prior for log2(a+1) per digit
  prec_t p = 64 + static_cast<prec_t>(std::ceil(1.5 * d * assumed_bits * double(n)));
  ExpansionResult best;
  for (int attempt = 0; attempt < 6; ++attempt) {
    ExpansionResult res = expand_once(sys, reround(x, p), n, p);
    if (res.trusted_count >= n) return res;
    if (res.trusted_count > best.trusted_count || attempt == 0) best = res;
    double observed = 0.0;
    for (std::size_t k = 0; k < res.trusted_count; ++k)
      observed += std::log2(double(res.digits[k]) + 1.0);
    double projected = res.trusted_count
                           ? observed * double(n) / double(res.trusted_count)
                           : assumed_bits * double(n);
    prec_t want = 64 + static_cast<prec_t>(std::ceil(1.5 * d * projected));
    prec_t next = std::max<prec_t>(want, 2 * p);
    if (next > (prec_t{1} << 24)) break;
    p = next;
  }
  return best;
}

ExpansionResult expand(const GaussLikeSystem& sys, double x, std::size_t n, prec_t precision) {
  prec_t p0 = precision > 0 ? precision : 64;
  return expand(sys, Interval(x, p0), n, precision);
}

CylinderInterval project(const GaussLikeSystem& sys, const DigitWord& word, prec_t precision) {
  validate_word(word);
  if (word.empty()) throw InvalidParameterError("project requires a non-empty word");
  CylinderInterval cyl;
  cyl.word = word;
  Interval a(0.0, precision), b(1.0, precision);  // endpoint enclosures
  bool a_is_left = true;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    a = sys.map(*it, a);
    b = sys.map(*it, b);
    if (!sys.increasing_branches()) a_is_left = !a_is_left;
  }
  cyl.left = a_is_left ? a : b;
  cyl.right = a_is_left ? b : a;
  long we = std::max(cyl.left.width_exponent(), cyl.right.width_exponent());
  cyl.precision_bits = (we == LONG_MIN) ? precision : std::max<long>(0, -we);
  cyl.degraded = cyl.precision_bits < precision / 2;
  return cyl;
}

Interval branch_value(const GaussLikeSystem& sys, std::uint64_t i, double x, prec_t precision) {
  if (x < 0.0 || x > 1.0) throw InvalidParameterError("branch argument must be in [0,1]");
  Interval xi(x, precision + 32);
  Interval y = sys.map(i, xi);
  return intersect(y, unit_interval(precision + 32));
}

LengthBounds cylinder_length_bounds(const GaussLikeSystem& sys, const DigitWord& word) {
  validate_word(word);
  if (word.empty()) throw InvalidParameterError("word must be non-empty");
  double d = sys.d();
  double logprod = 0.0;
  for (auto a : word) logprod += -d * std::log(double(a));
  double n = double(word.size());
  LengthBounds lb;
  lb.log_lower = n * std::log(sys.c1_d()) + logprod;
  lb.log_upper = n * std::log(sys.c2_d()) + logprod;
  lb.lower = std::exp(lb.log_lower);
  lb.upper = std::exp(lb.log_upper);
  return lb;
}

std::pair<Interval, Interval> cylinder_length_bounds_enc(const GaussLikeSystem& sys,
                                                         const DigitWord& word, prec_t prec) {
  validate_word(word);
  if (word.empty()) throw InvalidParameterError("word must be non-empty");
  double d = sys.d();
  Interval prod(1.0, prec);
  for (auto a : word) {
    Interval av = Interval::point_ui(a, prec);
    prod = mul(prod, pow_d(av, -d));
  }
  Interval c1 = sys.c1(prec);
  Interval c2 = sys.c2(prec);
  Interval lo = prod;
  Interval hi = prod;
  for (std::size_t k = 0; k < word.size(); ++k) {
    lo = mul(lo, c1);
    hi = mul(hi, c2);
  }
  return {lo, hi};
}

}  // namespace iifs
