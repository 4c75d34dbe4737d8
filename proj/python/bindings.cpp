#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "khab/conjecture.hpp"
#include "khab/errors.hpp"
#include "khab/differentiate.hpp"
#include "khab/funcspace.hpp"
#include "khab/grid.hpp"
#include "khab/inverse.hpp"
#include "khab/kernel.hpp"
#include "khab/quadrature.hpp"
#include "khab/transform.hpp"

namespace py = pybind11;
using namespace khab;

namespace {

Interpolation parse_interp(const std::string& s) {
  if (s == "cubic") return Interpolation::cubic;
  if (s == "linear") return Interpolation::linear;
  throw ConfigError("interpolation must be 'cubic' or 'linear'");
}

InverseMode parse_mode(const std::string& s) {
  if (s == "analytic") return InverseMode::analytic_if_possible;
  if (s == "numeric") return InverseMode::numeric_only;
  throw ConfigError("mode must be 'analytic' or 'numeric'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Direct and inverse conversion transforms for Khabibullin's conjecture";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);
  py::register_exception<ConditioningError>(m, "ConditioningError", PyExc_ArithmeticError);

  py::class_<QuadratureConfig>(m, "QuadratureConfig")
      .def(py::init<>())
      .def_readwrite("rel_tol", &QuadratureConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadratureConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadratureConfig::max_subdivisions)
      .def_readwrite("geometric_ratio", &QuadratureConfig::geometric_ratio);

  py::class_<TransformResult>(m, "TransformResult")
      .def_readonly("value", &TransformResult::value)
      .def_readonly("error_estimate", &TransformResult::error_estimate)
      .def_readonly("converged", &TransformResult::converged)
      .def_readonly("subdivisions_used", &TransformResult::subdivisions_used)
      .def_readonly("divergence_suspected", &TransformResult::divergence_suspected)
      .def("__repr__", [](const TransformResult& r) {
        return "TransformResult(value=" + std::to_string(r.value) +
               ", converged=" + (r.converged ? std::string("True") : std::string("False")) + ")";
      });

  // kernel
  m.def("kernel_value",
        [](int n, double x) { return kernel_value(KernelOrder(n), x); },
        py::arg("n"), py::arg("x"));
  m.def("kernel_derivative",
        [](int n, double x) { return kernel_derivative(KernelOrder(n), x); },
        py::arg("n"), py::arg("x"));
  m.def("kernel_partials",
        [](int n, double y, double t) {
          const KernelPartials p = kernel_partials(KernelOrder(n), y, t);
          return py::make_tuple(p.d_dy, p.d_dt);
        },
        py::arg("n"), py::arg("y"), py::arg("t"));
  m.def("kernel_derivative_at_one",
        [](int n, int k) { return kernel_derivative_at_one(KernelOrder(n), k); },
        py::arg("n"), py::arg("k"));

  // quadrature
  m.def("integrate_adaptive",
        [](const RealFunction& f, double a, double b, const QuadratureConfig& cfg) {
          return integrate_adaptive(f, a, b, cfg);
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("cfg") = QuadratureConfig{});
  m.def("integrate_log_singular",
        [](const RealFunction& f, double b, const QuadratureConfig& cfg) {
          return integrate_log_singular(f, b, cfg);
        },
        py::arg("f"), py::arg("b"), py::arg("cfg") = QuadratureConfig{});
  m.def("integrate_to_infinity",
        [](const RealFunction& f, double a, const QuadratureConfig& cfg) {
          return integrate_to_infinity(f, a, cfg);
        },
        py::arg("f"), py::arg("a"), py::arg("cfg") = QuadratureConfig{});
  m.def("differentiate",
        [](const RealFunction& f, double t, int order, int fit_degree, int window_points) {
          DiffConfig cfg;
          if (fit_degree > 0) cfg.fit_degree = fit_degree;
          if (window_points > 0) cfg.window_points = window_points;
          return differentiate(f, t, order, cfg);
        },
        py::arg("f"), py::arg("t"), py::arg("order"), py::arg("fit_degree") = 0,
        py::arg("window_points") = 0);

  // funcspace
  py::class_<PowerLawMix>(m, "PowerLawMix")
      .def(py::init([](const std::vector<std::pair<double, double>>& terms) {
             std::vector<PowerTerm> ts;
             ts.reserve(terms.size());
             for (const auto& [c, beta] : terms) ts.push_back({c, beta});
             return PowerLawMix(std::move(ts));
           }),
           py::arg("terms"))
      .def("__call__", &PowerLawMix::operator(), py::arg("t"))
      .def_property_readonly("terms",
                             [](const PowerLawMix& mix) {
                               std::vector<std::pair<double, double>> out;
                               for (const PowerTerm& t : mix.terms())
                                 out.emplace_back(t.c, t.beta);
                               return out;
                             })
      .def("scaled", &PowerLawMix::scaled, py::arg("factor"))
      .def("to_json", [](const PowerLawMix& mix) { return to_json_string(mix); })
      .def_static("from_json", &mix_from_json_string, py::arg("text"));

  py::class_<SampledFunction>(m, "SampledFunction")
      .def(py::init([](std::vector<double> grid, std::vector<double> values,
                       const std::string& interpolation) {
             return SampledFunction(std::move(grid), std::move(values),
                                    parse_interp(interpolation));
           }),
           py::arg("grid"), py::arg("values"), py::arg("interpolation") = "cubic")
      .def("__call__", &SampledFunction::operator(), py::arg("t"))
      .def_property_readonly("grid", &SampledFunction::grid)
      .def_property_readonly("values", &SampledFunction::values)
      .def("to_csv", [](const SampledFunction& f) { return to_csv_string(f); })
      .def_static("from_csv",
                  [](const std::string& text, const std::string& interpolation) {
                    return sampled_from_csv_string(text, parse_interp(interpolation));
                  },
                  py::arg("text"), py::arg("interpolation") = "cubic");

  m.def("transform_constant",
        [](int n, double beta) { return transform_constant(KernelOrder(n), beta).value; },
        py::arg("n"), py::arg("beta"));
  m.def("closed_form_transform",
        [](const PowerLawMix& q, int n) { return closed_form_transform(q, KernelOrder(n)); },
        py::arg("q"), py::arg("n"));
  m.def("closed_form_inverse",
        [](const PowerLawMix& g, int n) { return closed_form_inverse(g, KernelOrder(n)); },
        py::arg("g"), py::arg("n"));
  m.def("make_log_grid", &make_log_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));
  m.def("make_lin_grid", &make_lin_grid, py::arg("lo"), py::arg("hi"), py::arg("count"));

  // transform
  m.def("direct_transform",
        [](const PowerLawMix& q, double t, int n, const QuadratureConfig& cfg) {
          return direct_transform(q.evaluator(), t, KernelOrder(n), cfg);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});
  m.def("direct_transform",
        [](const RealFunction& q, double t, int n, const QuadratureConfig& cfg) {
          return direct_transform(q, t, KernelOrder(n), cfg);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});
  m.def("direct_transform_grid",
        [](const RealFunction& q, const std::vector<double>& grid, int n,
           const QuadratureConfig& cfg) {
          GridTransform gt = direct_transform_grid(q, grid, KernelOrder(n), cfg);
          return py::make_tuple(gt.g, gt.failed_points);
        },
        py::arg("q"), py::arg("grid"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});
  m.def("g_prime",
        [](const RealFunction& q, double t, int n, const QuadratureConfig& cfg) {
          return g_prime(q, t, KernelOrder(n), cfg);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});
  m.def("tilde_g",
        [](const RealFunction& q, double t, int n, const QuadratureConfig& cfg) {
          return tilde_g(q, t, KernelOrder(n), cfg);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});
  m.def("tilde_g_derivative",
        [](const RealFunction& q, double t, int n, int k, const QuadratureConfig& cfg) {
          return tilde_g_derivative(q, t, KernelOrder(n), k, cfg);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("k"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("integrability_check",
        [](const RealFunction& q, double t, const QuadratureConfig& cfg) {
          const IntegrabilityReport rep = integrability_check(q, t, cfg);
          py::dict out;
          out["q_integral"] = rep.q_integral;
          out["log_weighted_integral"] = rep.log_weighted_integral;
          out["verdict"] = rep.verdict == IntegrabilityReport::Verdict::finite
                               ? "finite"
                               : "suspect-divergent";
          return out;
        },
        py::arg("q"), py::arg("t"), py::arg("cfg") = QuadratureConfig{});
  m.def("derivative_consistency",
        [](const RealFunction& q, double t, int n, const QuadratureConfig& cfg) {
          const DerivativeConsistency d = derivative_consistency(q, t, KernelOrder(n), cfg);
          return py::make_tuple(d.analytic, d.numeric, d.rel_err);
        },
        py::arg("q"), py::arg("t"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});

  // inverse
  py::class_<InverseResult>(m, "InverseResult")
      .def_readonly("value", &InverseResult::value)
      .def_readonly("noise_estimate", &InverseResult::noise_estimate)
      .def_readonly("conditioning_warning", &InverseResult::conditioning_warning);

  m.def("inverse_transform",
        [](const PowerLawMix& g, double t, int n, const std::string& mode) {
          InverseConfig cfg;
          cfg.mode = parse_mode(mode);
          return inverse_transform(g, t, KernelOrder(n), cfg);
        },
        py::arg("g"), py::arg("t"), py::arg("n"), py::arg("mode") = "analytic");
  m.def("inverse_transform",
        [](const RealFunction& g, double t, int n, const std::string&) {
          return inverse_transform(g, t, KernelOrder(n), InverseConfig{});
        },
        py::arg("g"), py::arg("t"), py::arg("n"), py::arg("mode") = "numeric");
  m.def("inverse_transform_sampled",
        [](const SampledFunction& g, double t, int n) {
          return inverse_transform_sampled(g, t, KernelOrder(n), InverseConfig{});
        },
        py::arg("g"), py::arg("t"), py::arg("n"));
  m.def("roundtrip_residual",
        [](const RealFunction& q, const std::vector<double>& grid, int n,
           const QuadratureConfig& cfg) {
          return roundtrip_residual(q, grid, KernelOrder(n), InverseConfig{}, cfg);
        },
        py::arg("q"), py::arg("grid"), py::arg("n"), py::arg("cfg") = QuadratureConfig{});

  // conjecture
  py::class_<ConjectureParams>(m, "ConjectureParams")
      .def(py::init([](double alpha, int n) {
             ConjectureParams p{alpha, n};
             p.validate();
             return p;
           }),
           py::arg("alpha"), py::arg("n"))
      .def_readonly("alpha", &ConjectureParams::alpha)
      .def_readonly("n", &ConjectureParams::n);

  py::class_<ConjectureReport>(m, "ConjectureReport")
      .def_readonly("alpha", &ConjectureReport::alpha)
      .def_readonly("n", &ConjectureReport::n)
      .def_readonly("family_id", &ConjectureReport::family_id)
      .def_readonly("premise_ok", &ConjectureReport::premise_ok)
      .def_readonly("conclusion_value", &ConjectureReport::conclusion_value)
      .def_readonly("bound", &ConjectureReport::bound)
      .def_readonly("ratio", &ConjectureReport::ratio)
      .def_property_readonly("verdict",
                             [](const ConjectureReport& r) { return to_string(r.verdict); })
      .def_property_readonly("premise_margins",
                             [](const ConjectureReport& r) {
                               std::vector<std::tuple<double, double, double, double>> out;
                               for (const PremiseSample& s : r.premise_margins)
                                 out.emplace_back(s.t, s.lhs, s.t_alpha, s.margin);
                               return out;
                             })
      .def("to_json", [](const ConjectureReport& r) { return report_to_json(r); });

  m.def("premise_lhs",
        [](const RealFunction& q, double t, const ConjectureParams& p,
           const QuadratureConfig& cfg) { return premise_lhs(q, t, p, cfg); },
        py::arg("q"), py::arg("t"), py::arg("params"), py::arg("cfg") = QuadratureConfig{});
  m.def("conclusion_lhs",
        [](const RealFunction& q, double alpha, const QuadratureConfig& cfg) {
          return conclusion_lhs(q, alpha, cfg);
        },
        py::arg("q"), py::arg("alpha"), py::arg("cfg") = QuadratureConfig{});
  m.def("conclusion_rhs", [](const ConjectureParams& p) { return conclusion_rhs(p); },
        py::arg("params"));
  m.def("extremal_q", [](const ConjectureParams& p) { return extremal_q(p); },
        py::arg("params"));
  m.def("check",
        [](const PowerLawMix& q, const ConjectureParams& p, const std::vector<double>& grid,
           const QuadratureConfig& cfg) { return check(q, p, grid, cfg); },
        py::arg("q"), py::arg("params"), py::arg("t_grid"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("check",
        [](const RealFunction& q, const ConjectureParams& p, const std::vector<double>& grid,
           const QuadratureConfig& cfg) { return check(q, p, grid, cfg); },
        py::arg("q"), py::arg("params"), py::arg("t_grid"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("sweep_extremal",
        [](const std::vector<double>& alphas, const std::vector<int>& ns,
           const std::vector<double>& grid, const QuadratureConfig& cfg) {
          return sweep(alphas, ns, extremal_family(), grid, cfg);
        },
        py::arg("alphas"), py::arg("ns"), py::arg("t_grid"),
        py::arg("cfg") = QuadratureConfig{});
  m.def("sweep_summary_csv",
        [](const std::vector<ConjectureReport>& reports) { return sweep_summary_csv(reports); },
        py::arg("reports"));

  m.attr("__version__") = "0.1.0";
}
