#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "iifs/cantor.hpp"
#include "iifs/covers.hpp"
#include "iifs/exponents.hpp"
#include "iifs/measures.hpp"
#include "iifs/system.hpp"

namespace py = pybind11;
using namespace iifs;

namespace {

GaussLikeSystem system_from_arg(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return system_from_json(spec);
  SystemKind kind = system_kind_from_name(spec);
  return make_system(kind);
}

double value_or_inf(double v) { return v; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "d-decaying Gauss-like infinite iterated function systems";

  py::register_exception<InvalidParameterError>(m, "InvalidParameterError",
                                                PyExc_ValueError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<BracketError>(m, "BracketError", PyExc_ArithmeticError);
  py::register_exception<AmbiguousExpansionError>(m, "AmbiguousExpansionError",
                                                  PyExc_ArithmeticError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_ValueError);
  py::register_exception<DegenerateSequenceError>(m, "DegenerateSequenceError",
                                                  PyExc_ValueError);

  py::class_<GaussLikeSystem>(m, "GaussLikeSystem")
      .def_property_readonly("name", &GaussLikeSystem::name)
      .def_property_readonly("d", &GaussLikeSystem::d)
      .def_property_readonly("c1", &GaussLikeSystem::c1_d)
      .def_property_readonly("c2", &GaussLikeSystem::c2_d)
      .def_property_readonly("kappa",
                             [](const GaussLikeSystem& s) { return s.kappa(); })
      .def("branch", [](const GaussLikeSystem& s, std::uint64_t i, double x,
                        int precision) { return branch_value(s, i, x, precision).mid_d(); },
           py::arg("i"), py::arg("x"), py::arg("precision") = 64)
      .def("derivative_bounds",
           [](const GaussLikeSystem& s, std::uint64_t i) {
             DerivativeBounds b = s.derivative_bounds(i);
             return py::make_tuple(b.xi.mid_d(), b.lambda.mid_d());
           },
           py::arg("i"))
      .def("__repr__",
           [](const GaussLikeSystem& s) { return "<GaussLikeSystem " + s.name() + ">"; });

  m.def("make_system", &system_from_arg, py::arg("spec"),
        "Build a system from a name (cf/luroth/qg) or a JSON config string");
  m.def(
      "make_linear_decay",
      [](double d) { return make_system(SystemKind::LinearDecay, d); },
      py::arg("d"));

  m.def(
      "expand",
      [](const GaussLikeSystem& sys, const std::string& x, std::size_t n, int precision) {
        Interval xi = Interval::from_decimal(x, precision > 0 ? precision : 256);
        ExpansionResult r = expand(sys, xi, n, precision);
        py::dict out;
        out["digits"] = r.digits;
        out["trusted_count"] = r.trusted_count;
        out["ambiguous"] = r.ambiguous;
        out["precision"] = std::int64_t(r.precision_used);
        return out;
      },
      py::arg("system"), py::arg("x"), py::arg("n"), py::arg("precision") = 0,
      "Digit expansion of a point given as a decimal string");

  m.def(
      "project",
      [](const GaussLikeSystem& sys, const DigitWord& word, int precision) {
        CylinderInterval c = project(sys, word, precision);
        Interval len = c.length();
        py::dict out;
        out["lo"] = c.lo();
        out["hi"] = c.hi();
        out["length_lo"] = len.lo_d();
        out["length_hi"] = len.hi_d();
        out["precision_bits"] = c.precision_bits;
        out["degraded"] = c.degraded;
        return out;
      },
      py::arg("system"), py::arg("word"), py::arg("precision") = 128);

  m.def(
      "cylinder_length_bounds",
      [](const GaussLikeSystem& sys, const DigitWord& word) {
        LengthBounds b = cylinder_length_bounds(sys, word);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("system"), py::arg("word"));

  // exponents
  m.def(
      "tau_from_rearrangement",
      [](const std::vector<std::uint64_t>& digits) {
        ExponentEstimate e = tau_from_rearrangement(digits);
        py::dict out;
        out["value"] = value_or_inf(e.value);
        out["ratio_liminf"] = e.ratio_liminf;
        out["ratio_limsup"] = e.ratio_limsup;
        out["window"] = e.window;
        out["n_used"] = e.n_used;
        return out;
      },
      py::arg("digits"));
  m.def(
      "tau_by_partial_sums",
      [](const std::vector<std::uint64_t>& digits, double s_lo, double s_hi) {
        PartialSumTau r = tau_by_partial_sums(digits, s_lo, s_hi);
        return py::make_tuple(r.value, r.at_boundary);
      },
      py::arg("digits"), py::arg("s_lo") = 0.0, py::arg("s_hi") = 4.0);
  m.def(
      "tau2_from_digits",
      [](const std::vector<std::uint64_t>& digits, const std::vector<double>& weights) {
        ExponentEstimate e = tau2_from_digits(digits, WeightVector(weights));
        py::dict out;
        out["value"] = e.value;
        out["ratio_liminf"] = e.ratio_liminf;
        out["ratio_limsup"] = e.ratio_limsup;
        return out;
      },
      py::arg("digits"), py::arg("weights"));
  m.def(
      "ratio_diagnostics",
      [](const std::vector<std::uint64_t>& digits, const std::vector<double>& weights) {
        ExponentEstimate e = ratio_diagnostics(digits, WeightVector(weights));
        py::dict out;
        out["value"] = e.value;
        out["ratio_liminf"] = e.ratio_liminf;
        out["ratio_limsup"] = e.ratio_limsup;
        return out;
      },
      py::arg("digits"), py::arg("weights"));
  m.def("is_monotone",
        [](const std::vector<std::uint64_t>& d) { return is_monotone(d); });

  // measures
  m.def(
      "zeta", [](double t, int precision) { return zeta_enclosure(t, precision).mid_d(); },
      py::arg("t"), py::arg("precision") = 96);
  m.def(
      "gibbs_mass",
      [](double t, const DigitWord& word) { return gibbs_mass(make_gibbs_spec(t), word); },
      py::arg("t"), py::arg("word"));
  m.def(
      "gibbs_mass_check",
      [](double t, unsigned n, std::uint64_t cap) {
        return gibbs_mass_check(make_gibbs_spec(t), n, cap);
      },
      py::arg("t"), py::arg("n"), py::arg("cap"));
  m.def(
      "pressure",
      [](const GaussLikeSystem& sys, double t, unsigned n, std::uint64_t cap) {
        PressureBounds b = pressure(sys, t, n, cap);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("system"), py::arg("t"), py::arg("n") = 1, py::arg("cap") = 100000);
  m.def(
      "pressure_root",
      [](const GaussLikeSystem& sys, double lo, double hi, double tol) {
        return pressure_root(sys, lo, hi, tol);
      },
      py::arg("system"), py::arg("t_lo") = 0.8, py::arg("t_hi") = 1.2,
      py::arg("tol") = 1e-7);
  m.def(
      "perron_iterate",
      [](const GaussLikeSystem& sys, double t, std::size_t grid, unsigned iters,
         std::uint64_t cap) {
        DensityGrid g = perron_iterate(sys, t, grid, iters, cap);
        py::dict out;
        out["x"] = g.x;
        out["g"] = g.g;
        out["sup_diffs"] = g.sup_diffs;
        out["diverged"] = g.diverged;
        return out;
      },
      py::arg("system"), py::arg("t") = 1.0, py::arg("grid") = 1024,
      py::arg("iterations") = 30, py::arg("cap") = 100000);
  m.def(
      "birkhoff_geometric_mean",
      [](const GaussLikeSystem& sys, std::size_t samples, std::size_t depth,
         std::uint64_t seed, unsigned threads) {
        MonteCarloEstimate r = birkhoff_geometric_mean(sys, samples, depth, seed, threads);
        py::dict out;
        out["estimate"] = r.estimate;
        out["stderr"] = r.stderr_;
        out["samples"] = r.samples;
        out["depth"] = r.depth;
        out["seed"] = r.seed;
        out["depth_reduced"] = r.depth_reduced;
        return out;
      },
      py::arg("system"), py::arg("samples"), py::arg("depth"), py::arg("seed") = 1,
      py::arg("threads") = 0);
  m.def(
      "tau_infinity_evidence",
      [](const GaussLikeSystem& sys, std::size_t samples, std::size_t depth,
         std::uint64_t seed, unsigned threads, std::uint64_t bound, double density) {
        EvidenceReport r =
            tau_infinity_evidence(sys, samples, depth, seed, threads, bound, density);
        py::dict out;
        out["fraction"] = r.fraction;
        out["digit_bound"] = r.digit_bound;
        out["density"] = r.density;
        return out;
      },
      py::arg("system"), py::arg("samples"), py::arg("depth"), py::arg("seed") = 1,
      py::arg("threads") = 0, py::arg("digit_bound") = 10, py::arg("density") = 0.01);

  // cantor
  m.def(
      "cantor_spec_names",
      [] {
        return std::vector<std::string>{"e0", "power-alpha", "e-alpha-weighted", "jqdg",
                                        "infinity-branch"};
      });
  m.def(
      "sample_cantor_point",
      [](const std::string& family, double alpha, double sigma_t, std::size_t n,
         std::uint64_t seed, bool reject) {
        CantorSpec spec =
            builtin_cantor_spec(cantor_family_from_name(family), alpha, sigma_t);
        CantorSample s = sample_point(spec, n, seed, reject);
        py::dict out;
        out["digits"] = s.digits;
        out["monotone_violation_rate"] = s.monotone_violation_rate;
        out["resamples"] = s.resamples;
        return out;
      },
      py::arg("family"), py::arg("alpha") = 0.0, py::arg("sigma_t") = 0.0, py::arg("n") = 100,
      py::arg("seed") = 1, py::arg("reject_nonmonotone") = false);
  m.def(
      "cantor_dimension_estimate",
      [](const std::string& family, double alpha, double sigma_t, std::size_t n_max,
         double d) {
        CantorSpec spec =
            builtin_cantor_spec(cantor_family_from_name(family), alpha, sigma_t);
        CantorDimensionEstimate e = cantor_dimension_estimate(spec, n_max, d);
        return py::make_tuple(e.value_at_nmax, e.running_min_tail);
      },
      py::arg("family"), py::arg("alpha") = 0.0, py::arg("sigma_t") = 0.0,
      py::arg("n_max") = 10000, py::arg("d") = 2.0);
  m.def("dim_tau1_level", &dim_tau1_level, py::arg("alpha"), py::arg("d"));
  m.def(
      "dim_tau2_level",
      [](double alpha, const std::vector<double>& w, double d) {
        return dim_tau2_level(alpha, WeightVector(w), d);
      },
      py::arg("alpha"), py::arg("weights"), py::arg("d"));
  m.def(
      "dim_monotone_product_level",
      [](double alpha, double sigma_t, double d) {
        return dim_monotone_product_level(alpha, sigma_t, d);
      },
      py::arg("alpha"), py::arg("sigma_t"), py::arg("d"));
  m.def(
      "count_monotone_words",
      [](unsigned long n, unsigned long ell) {
        return py::cast(count_monotone_words(n, ell).get_str());
      },
      py::arg("n"), py::arg("ell"), "Exact count as a decimal string");

  // covers
  m.def(
      "good_critical_exponent",
      [](double d, double c2, std::uint64_t M, double tol) {
        return good_critical_exponent(d, c2, M, tol).s_star;
      },
      py::arg("d"), py::arg("c2") = 1.0, py::arg("M") = 2, py::arg("tol") = 1e-9);
  m.def(
      "subdivision_dimension_bound",
      [](double alpha, double sigma_t, double d, std::uint64_t n) {
        SubdivisionBound b = subdivision_dimension_bound(alpha, sigma_t, d, n);
        return py::make_tuple(b.value, b.argmax_k);
      },
      py::arg("alpha"), py::arg("sigma_t"), py::arg("d"), py::arg("n"));

  m.attr("__version__") = "0.1.0";
}
