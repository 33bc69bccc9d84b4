// Command-line interface: subcommands over the library operations with
// CSV/JSON emission and seeded reproducibility.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "iifs/cantor.hpp"
#include "iifs/covers.hpp"
#include "iifs/csv.hpp"
#include "iifs/exponents.hpp"
#include "iifs/measures.hpp"
#include "iifs/system.hpp"

using nlohmann::json;
using namespace iifs;

namespace {

int default_precision_bits(int fallback) {
  if (const char* env = std::getenv("IIFS_PRECISION_BITS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return fallback;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw InvalidParameterError("cannot open output file: " + out_path);
  f << content;
}

GaussLikeSystem parse_system(const std::string& text) {
  if (!text.empty() && text.front() == '{') return system_from_json(text);
  SystemKind kind = system_kind_from_name(text);
  if (kind == SystemKind::LinearDecay)
    throw InvalidParameterError(
        "linear_decay needs a JSON config with d, e.g. {\"kind\":\"linear_decay\",\"d\":2.5}");
  return make_system(kind);
}

DigitWord parse_word(const std::string& text) {
  DigitWord w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    w.push_back(std::stoull(tok));
  }
  validate_word(w);
  return w;
}

std::vector<double> parse_weights(const std::string& text) {
  std::vector<double> w;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    w.push_back(std::stod(tok));
  }
  return w;
}

// "lo:hi:step", a single value, or "inf"
std::vector<double> parse_grid(const std::string& text) {
  if (text == "inf") return {std::numeric_limits<double>::infinity()};
  auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos) throw InvalidParameterError("grid must be lo:hi:step");
  double lo = std::stod(text.substr(0, c1));
  double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  double step = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0) || hi < lo) throw InvalidParameterError("grid must satisfy lo <= hi, step > 0");
  std::vector<double> g;
  for (double v = lo; v <= hi + step * 1e-9; v += step) g.push_back(v);
  return g;
}

std::vector<std::uint64_t> load_digits(const std::string& input_path,
                                       const std::string& inline_json) {
  if (!input_path.empty()) return read_digit_csv_file(input_path);
  if (!inline_json.empty()) {
    json j = json::parse(inline_json);
    std::vector<std::uint64_t> d = j.get<std::vector<std::uint64_t>>();
    return d;
  }
  throw InvalidParameterError("provide digits via --input CSV or --digits JSON array");
}

json estimate_to_json(const ExponentEstimate& e) {
  json j;
  j["value"] = std::isinf(e.value) ? json("inf") : json(e.value);
  j["ratio_liminf"] = std::isinf(e.ratio_liminf) ? json("inf") : json(e.ratio_liminf);
  j["ratio_limsup"] = std::isinf(e.ratio_limsup) ? json("inf") : json(e.ratio_limsup);
  j["window"] = e.window;
  j["n_used"] = e.n_used;
  return j;
}

double spectrum_value(const std::string& family, double alpha, double sigma_t, double d,
                      const std::optional<WeightVector>& w) {
  if (family == "e") return dim_tau1_level(alpha, d);
  if (family == "e-weighted") {
    WeightVector wv = w ? *w : WeightVector({1.0, 1.0});
    return dim_tau2_level(alpha, wv, d);
  }
  if (family == "e-lambda") return dim_monotone_product_level(alpha, sigma_t, d);
  if (family == "f-g") return dim_monotone_product_level_limit(alpha, sigma_t, d);
  throw InvalidParameterError("unknown spectrum family: " + family);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for d-decaying Gauss-like infinite iterated "
               "function systems"};
  app.require_subcommand(1);
  int exit_code = 0;

  // ---- expand ----
  auto* c_expand = app.add_subcommand("expand", "digit expansion of a point");
  struct {
    std::string system = "cf", x, out, format = "csv";
    std::size_t digits = 10;
    int precision = 0;
  } ex;
  c_expand->add_option("--system", ex.system, "system name or JSON config");
  c_expand->add_option("--x", ex.x, "point in (0,1), decimal")->required();
  c_expand->add_option("--digits", ex.digits, "number of digits")->required();
  c_expand->add_option("--precision", ex.precision, "working precision bits (0 = adaptive)");
  c_expand->add_option("--format", ex.format)->check(CLI::IsMember({"csv", "json"}));
  c_expand->add_option("--out", ex.out, "output path (default stdout)");
  c_expand->callback([&] {
    GaussLikeSystem sys = parse_system(ex.system);
    int prec = default_precision_bits(ex.precision);
    Interval x = Interval::from_decimal(ex.x, prec > 0 ? prec : 256);
    ExpansionResult r = expand(sys, x, ex.digits, prec);
    if (ex.format == "csv") {
      std::ostringstream ss;
      write_digit_csv(ss, r.digits);
      emit(ex.out, ss.str());
      std::cerr << "trusted_count=" << r.trusted_count << " precision=" << r.precision_used
                << " ambiguous=" << (r.ambiguous ? 1 : 0) << "\n";
    } else {
      json j;
      j["digits"] = r.digits;
      j["trusted_count"] = r.trusted_count;
      j["ambiguous"] = r.ambiguous;
      j["precision"] = r.precision_used;
      j["system"] = sys.name();
      j["x"] = ex.x;
      emit(ex.out, j.dump(2) + "\n");
    }
  });

  // ---- project ----
  auto* c_project = app.add_subcommand("project", "cylinder interval of a digit word");
  struct {
    std::string system = "cf", word, out, format = "json";
    int precision = 128;
  } pj;
  c_project->add_option("--system", pj.system);
  c_project->add_option("--word", pj.word, "comma-separated digits")->required();
  c_project->add_option("--precision", pj.precision);
  c_project->add_option("--format", pj.format)->check(CLI::IsMember({"csv", "json"}));
  c_project->add_option("--out", pj.out);
  c_project->callback([&] {
    GaussLikeSystem sys = parse_system(pj.system);
    int prec = default_precision_bits(pj.precision);
    CylinderInterval cyl = project(sys, parse_word(pj.word), prec);
    Interval len = cyl.length();
    if (pj.format == "json") {
      json j;
      j["lo"] = cyl.lo();
      j["hi"] = cyl.hi();
      j["length_lo"] = len.lo_d();
      j["length_hi"] = len.hi_d();
      j["precision_bits"] = cyl.precision_bits;
      j["degraded"] = cyl.degraded;
      j["system"] = sys.name();
      emit(pj.out, j.dump(2) + "\n");
    } else {
      std::ostringstream ss;
      ss << "lo,hi,length_lo,length_hi,precision_bits\n"
         << format_double(cyl.lo()) << "," << format_double(cyl.hi()) << ","
         << format_double(len.lo_d()) << "," << format_double(len.hi_d()) << ","
         << cyl.precision_bits << "\n";
      emit(pj.out, ss.str());
    }
  });

  // ---- tau ----
  auto* c_tau = app.add_subcommand("tau", "convergence exponent estimators");
  struct {
    std::string input, digits_json, method = "rearrangement", weights = "1,1", out;
    double s_lo = 0.0, s_hi = 4.0;
  } ta;
  c_tau->add_option("--input", ta.input, "digit CSV path (header: digit)");
  c_tau->add_option("--digits", ta.digits_json, "inline JSON array of digits");
  c_tau->add_option("--method", ta.method)
      ->check(CLI::IsMember({"rearrangement", "partial-sums", "tau2", "ratio"}));
  c_tau->add_option("--weights", ta.weights, "comma-separated weights t_0..t_m");
  c_tau->add_option("--s-lo", ta.s_lo);
  c_tau->add_option("--s-hi", ta.s_hi);
  c_tau->add_option("--out", ta.out);
  c_tau->callback([&] {
    std::vector<std::uint64_t> digits = load_digits(ta.input, ta.digits_json);
    json j;
    if (ta.method == "rearrangement") {
      j = estimate_to_json(tau_from_rearrangement(digits));
    } else if (ta.method == "partial-sums") {
      PartialSumTau r = tau_by_partial_sums(digits, ta.s_lo, ta.s_hi);
      j["value"] = r.value;
      j["at_boundary"] = r.at_boundary;
      j["s_lo"] = ta.s_lo;
      j["s_hi"] = ta.s_hi;
    } else {
      WeightVector w(parse_weights(ta.weights));
      j = estimate_to_json(ta.method == "tau2" ? tau2_from_digits(digits, w)
                                               : ratio_diagnostics(digits, w));
      j["weights"] = w.weights();
      j["sigma_t"] = w.sigma();
    }
    j["method"] = ta.method;
    j["n_digits"] = digits.size();
    emit(ta.out, j.dump(2) + "\n");
  });

  // ---- spectrum ----
  auto* c_spec = app.add_subcommand("spectrum", "dimension spectra of the level sets");
  struct {
    std::string family = "e", alpha = "0:8:0.5", weights, out;
    double d = 2.0, sigma_t = 1.0;
  } sp;
  c_spec->add_option("--family", sp.family)
      ->check(CLI::IsMember({"e", "e-weighted", "e-lambda", "f-g"}));
  c_spec->add_option("--d", sp.d)->required();
  c_spec->add_option("--sigma-t", sp.sigma_t);
  c_spec->add_option("--weights", sp.weights);
  c_spec->add_option("--alpha", sp.alpha, "grid lo:hi:step, a value, or inf");
  c_spec->add_option("--out", sp.out);
  c_spec->callback([&] {
    std::optional<WeightVector> w;
    double sigma = sp.sigma_t;
    if (!sp.weights.empty()) {
      w = WeightVector(parse_weights(sp.weights));
      sigma = w->sigma();
    }
    std::ostringstream ss;
    ss << "alpha,sigma_t,d,dim\n";
    for (double a : parse_grid(sp.alpha)) {
      double dim = spectrum_value(sp.family, a, sigma, sp.d, w);
      ss << (std::isinf(a) ? "inf" : format_double(a)) << "," << format_double(sigma) << ","
         << format_double(sp.d) << "," << format_double(dim) << "\n";
    }
    emit(sp.out, ss.str());
  });

  // ---- cantor ----
  auto* c_cantor = app.add_subcommand("cantor", "digit-box Cantor constructions");
  struct {
    std::string mode = "sample", family = "e0", sequences, out;
    double alpha = 0.0, sigma_t = 0.0, d = 2.0;
    std::size_t n = 100;
    std::uint64_t seed = 1;
    bool reject = false, trace = false;
  } ca;
  c_cantor->add_option("--mode", ca.mode)->check(CLI::IsMember({"sample", "lr"}));
  c_cantor->add_option("--case", ca.family,
                       "e0|power-alpha|e-alpha-weighted|jqdg|infinity-branch|tabulated");
  c_cantor->add_option("--alpha", ca.alpha);
  c_cantor->add_option("--sigma-t", ca.sigma_t);
  c_cantor->add_option("--d", ca.d);
  c_cantor->add_option("--n", ca.n, "digits to sample / n_max for the formula");
  c_cantor->add_option("--seed", ca.seed);
  c_cantor->add_option("--sequences", ca.sequences, "CSV (header s,r) for tabulated case");
  c_cantor->add_flag("--reject-nonmonotone", ca.reject);
  c_cantor->add_flag("--trace", ca.trace, "emit the full ratio trace as CSV");
  c_cantor->add_option("--out", ca.out);
  c_cantor->callback([&] {
    CantorSpec spec;
    std::vector<std::string> warnings;
    if (ca.family == "tabulated") {
      if (ca.sequences.empty())
        throw InvalidParameterError("tabulated case needs --sequences CSV");
      std::ifstream f(ca.sequences);
      if (!f) throw InvalidParameterError("cannot open " + ca.sequences);
      std::vector<double> s, r;
      read_sequence_csv(f, s, r);
      spec = tabulated_cantor_spec(std::move(s), std::move(r), &warnings);
      for (const auto& wmsg : warnings) std::cerr << "warning: " << wmsg << "\n";
    } else {
      spec = builtin_cantor_spec(cantor_family_from_name(ca.family), ca.alpha, ca.sigma_t);
    }
    if (ca.mode == "sample") {
      CantorSample sample = sample_point(spec, ca.n, ca.seed, ca.reject);
      std::ostringstream ss;
      write_digit_csv(ss, sample.digits);
      emit(ca.out, ss.str());
      std::cerr << "monotone_violation_rate=" << format_double(sample.monotone_violation_rate)
                << " resamples=" << sample.resamples << " seed=" << ca.seed << "\n";
    } else {
      std::vector<double> trace;
      CantorDimensionEstimate est =
          cantor_dimension_estimate(spec, ca.n, ca.d, ca.trace ? &trace : nullptr);
      if (ca.trace) {
        std::ostringstream ss;
        ss << "n,ratio\n";
        for (std::size_t i = 0; i < trace.size(); ++i)
          ss << (i + 1) << "," << format_double(trace[i]) << "\n";
        emit(ca.out, ss.str());
      } else {
        json j;
        j["value_at_nmax"] = est.value_at_nmax;
        j["running_min_tail"] = est.running_min_tail;
        j["n_max"] = est.n_max;
        j["d"] = ca.d;
        j["case"] = ca.family;
        emit(ca.out, j.dump(2) + "\n");
      }
    }
  });

  // ---- pressure ----
  auto* c_press = app.add_subcommand("pressure", "topological pressure bounds and root");
  struct {
    std::string system = "cf", out;
    double t = 1.0, t_lo = 0.8, t_hi = 1.2, tol = 1e-7;
    unsigned n = 1;
    std::uint64_t cap = 100000;
    int precision = 96;
    bool root = false;
  } pr;
  c_press->add_option("--system", pr.system);
  c_press->add_option("--t", pr.t);
  c_press->add_option("--n", pr.n, "word depth (1 = closed form, 2-3 exhaustive)");
  c_press->add_option("--cap", pr.cap);
  c_press->add_option("--precision", pr.precision);
  c_press->add_flag("--root", pr.root, "bisect for the pressure zero");
  c_press->add_option("--t-lo", pr.t_lo);
  c_press->add_option("--t-hi", pr.t_hi);
  c_press->add_option("--tol", pr.tol);
  c_press->add_option("--out", pr.out);
  c_press->callback([&] {
    GaussLikeSystem sys = parse_system(pr.system);
    int prec = default_precision_bits(pr.precision);
    json j;
    j["system"] = sys.name();
    j["precision"] = prec;
    if (pr.root) {
      double root = pressure_root(sys, pr.t_lo, pr.t_hi, pr.tol,
                                  std::min<std::uint64_t>(pr.cap, 100000), prec);
      j["root"] = root;
      j["tol"] = pr.tol;
      j["bracket"] = {pr.t_lo, pr.t_hi};
    } else {
      PressureBounds b = pressure(sys, pr.t, pr.n, pr.cap, prec);
      j["t"] = pr.t;
      j["n"] = pr.n;
      j["cap"] = pr.cap;
      j["lower"] = b.lower;
      j["upper"] = b.upper;
    }
    emit(pr.out, j.dump(2) + "\n");
  });

  // ---- density ----
  auto* c_dens = app.add_subcommand("density", "transfer-operator density iteration");
  struct {
    std::string system = "cf", out, format = "csv";
    double t = 1.0;
    std::size_t grid = 2048;
    unsigned iterations = 30;
    std::uint64_t cap = 100000;
  } de;
  c_dens->add_option("--system", de.system);
  c_dens->add_option("--t", de.t);
  c_dens->add_option("--grid", de.grid);
  c_dens->add_option("--iterations", de.iterations);
  c_dens->add_option("--cap", de.cap);
  c_dens->add_option("--format", de.format)->check(CLI::IsMember({"csv", "json"}));
  c_dens->add_option("--out", de.out);
  c_dens->callback([&] {
    GaussLikeSystem sys = parse_system(de.system);
    DensityGrid g = perron_iterate(sys, de.t, de.grid, de.iterations, de.cap);
    if (de.format == "csv") {
      std::ostringstream ss;
      ss << "x,g\n";
      for (std::size_t i = 0; i < g.x.size(); ++i)
        ss << format_double(g.x[i]) << "," << format_double(g.g[i]) << "\n";
      emit(de.out, ss.str());
      if (g.diverged) std::cerr << "warning: sup-norm differences are not decreasing\n";
    } else {
      json j;
      j["iterations"] = g.iterations;
      j["sup_diffs"] = g.sup_diffs;
      j["diverged"] = g.diverged;
      j["grid"] = de.grid;
      j["cap"] = de.cap;
      j["t"] = de.t;
      j["system"] = sys.name();
      emit(de.out, j.dump(2) + "\n");
    }
  });

  // ---- khinchin (Monte Carlo geometric mean / degeneracy evidence) ----
  auto* c_kh = app.add_subcommand("khinchin", "Monte Carlo digit statistics");
  struct {
    std::string system = "cf", out;
    std::size_t samples = 2000, depth = 2000;
    std::uint64_t seed = 1, digit_bound = 10;
    unsigned threads = 0;
    double density = 0.01;
    bool evidence = false;
  } kh;
  c_kh->add_option("--system", kh.system);
  c_kh->add_option("--samples", kh.samples);
  c_kh->add_option("--depth", kh.depth);
  c_kh->add_option("--seed", kh.seed);
  c_kh->add_option("--threads", kh.threads, "0 = all cores");
  c_kh->add_flag("--evidence", kh.evidence,
                 "report the bounded-digit evidence fraction instead of the mean");
  c_kh->add_option("--digit-bound", kh.digit_bound);
  c_kh->add_option("--density", kh.density);
  c_kh->add_option("--out", kh.out);
  c_kh->callback([&] {
    GaussLikeSystem sys = parse_system(kh.system);
    json j;
    j["system"] = sys.name();
    j["samples"] = kh.samples;
    j["depth"] = kh.depth;
    j["seed"] = kh.seed;
    if (kh.evidence) {
      EvidenceReport r = tau_infinity_evidence(sys, kh.samples, kh.depth, kh.seed,
                                               kh.threads, kh.digit_bound, kh.density);
      j["fraction"] = r.fraction;
      j["digit_bound"] = r.digit_bound;
      j["density"] = r.density;
    } else {
      MonteCarloEstimate r =
          birkhoff_geometric_mean(sys, kh.samples, kh.depth, kh.seed, kh.threads);
      j["estimate"] = r.estimate;
      j["stderr"] = r.stderr_;
      j["depth_reduced"] = r.depth_reduced;
    }
    emit(kh.out, j.dump(2) + "\n");
  });

  // ---- covers ----
  auto* c_cov = app.add_subcommand("covers", "upper-bound cover machinery");
  struct {
    std::string op = "good-exponent", system = "cf", family = "good", s_grid = "0.3:1.2:0.01",
                out;
    double d = 2.0, c2 = 1.0, tol = 1e-9, t = 1.1, eps = 0.1, alpha = 0.0, sigma_t = 1.0,
           s = 0.5;
    std::uint64_t M = 2, k = 20, n = 100;
    unsigned m = 1;
  } cv;
  c_cov->add_option("--op", cv.op)
      ->check(CLI::IsMember({"good-exponent", "product-set", "dk-bound", "scan", "subdivision"}));
  c_cov->add_option("--system", cv.system);
  c_cov->add_option("--d", cv.d);
  c_cov->add_option("--c2", cv.c2);
  c_cov->add_option("--M", cv.M);
  c_cov->add_option("--tol", cv.tol);
  c_cov->add_option("--t", cv.t);
  c_cov->add_option("--eps", cv.eps);
  c_cov->add_option("--m", cv.m);
  c_cov->add_option("--alpha", cv.alpha);
  c_cov->add_option("--sigma-t", cv.sigma_t);
  c_cov->add_option("--s", cv.s);
  c_cov->add_option("--k", cv.k);
  c_cov->add_option("--n", cv.n);
  c_cov->add_option("--family", cv.family, "good|dk|dk-tilde (for scan)");
  c_cov->add_option("--s-grid", cv.s_grid);
  c_cov->add_option("--out", cv.out);
  c_cov->callback([&] {
    json j;
    if (cv.op == "good-exponent") {
      CriticalExponent r = good_critical_exponent(cv.d, cv.c2, cv.M, cv.tol);
      j = {{"s_star", r.s_star},
           {"M", r.M},
           {"bracket", {r.bracket_lo, r.bracket_hi}},
           {"tol", r.tol}};
    } else if (cv.op == "product-set") {
      ProductSetBound r = product_set_upper_bound(cv.d, cv.c2, cv.m, cv.t, cv.eps);
      j = {{"s", r.s}, {"log_M_min", r.log_M_min}};
      if (r.M_min) j["M_min"] = *r.M_min;
    } else if (cv.op == "dk-bound") {
      MonotoneFamilyBound r = dk_cardinality_bound(cv.k, cv.alpha, cv.s, cv.sigma_t);
      j = {{"ell", r.ell},
           {"log_exact_count", r.log_exact_count},
           {"log_bound", r.log_bound}};
    } else if (cv.op == "subdivision") {
      SubdivisionBound r = subdivision_dimension_bound(cv.alpha, cv.sigma_t, cv.d, cv.n);
      j = {{"value", r.value}, {"argmax_k", r.argmax_k}, {"n", cv.n}};
    } else {  // scan
      GaussLikeSystem sys = parse_system(cv.system);
      CoverFamilySpec fam;
      fam.kind = cover_family_from_name(cv.family);
      fam.M = cv.M;
      fam.alpha = cv.alpha;
      fam.sigma_t = cv.sigma_t;
      fam.eps = cv.eps;
      fam.m = cv.m;
      std::vector<double> grid = parse_grid(cv.s_grid);
      CoverSumProfile prof = hausdorff_sum_scan(sys, fam, cv.k, grid);
      std::ostringstream ss;
      ss << "s,log_sum,k\n";
      for (std::size_t i = 0; i < prof.s_grid.size(); ++i)
        ss << format_double(prof.s_grid[i]) << "," << format_double(prof.log_sums[i]) << ","
           << prof.k << "\n";
      emit(cv.out, ss.str());
      if (prof.crossing)
        std::cerr << "crossing=" << format_double(*prof.crossing) << "\n";
      return;
    }
    emit(cv.out, j.dump(2) + "\n");
  });

  // ---- count ----
  auto* c_count = app.add_subcommand("count", "monotone word count");
  struct {
    unsigned long n = 1, ell = 1;
    std::string out;
  } ct;
  c_count->add_option("--n", ct.n)->required();
  c_count->add_option("--ell", ct.ell)->required();
  c_count->add_option("--out", ct.out);
  c_count->callback([&] {
    mpz_class v = count_monotone_words(ct.n, ct.ell);
    emit(ct.out, v.get_str() + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
