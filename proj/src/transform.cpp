#include "khab/transform.hpp"

#include <cmath>
#include <string>

#include "khab/errors.hpp"
#include "khab/special_functions.hpp"

namespace khab {

namespace {

void check_t(double t, const char* what) {
  // t = 0 is excluded from the transform pair altogether
  if (!(t > 0.0)) throw DomainError(std::string(what) + ": t must be positive");
}

// integral of (t-y)^p q(y) dy over (0, t]; shared by the cascade.
TransformResult power_weighted_integral(const RealFunction& q, double t, int p,
                                        const QuadratureConfig& cfg) {
  const RealFunction integrand = [&q, t, p](double y) {
    // (t-y)^p / t^p form avoids overflow at large t and high p
    return std::pow(1.0 - y / t, p) * q(y);
  };
  TransformResult res = integrate_log_singular(integrand, t, cfg);
  const double scale = std::pow(t, p);
  res.value *= scale;
  res.error_estimate *= scale;
  return res;
}

}  // namespace

TransformResult direct_transform(const RealFunction& q, double t, KernelOrder n,
                                 const QuadratureConfig& cfg) {
  check_t(t, "direct_transform");
  const KernelEvalConfig kcfg;
  const RealFunction integrand = [&q, t, n, &kcfg](double y) {
    return kernel_value(n, y / t, kcfg) * q(y);
  };
  return integrate_log_singular(integrand, t, cfg);
}

GridTransform direct_transform_grid(const RealFunction& q, std::span<const double> grid,
                                    KernelOrder n, const QuadratureConfig& cfg,
                                    Interpolation interpolation) {
  if (grid.empty()) throw ConfigError("direct_transform_grid: empty grid");
  std::vector<double> values(grid.size());
  std::vector<std::size_t> failed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const TransformResult r = direct_transform(q, grid[i], n, cfg);
    values[i] = r.value;
    if (!r.converged) failed.push_back(i);
  }
  if (10 * failed.size() > grid.size())
    throw EvaluationError("direct_transform_grid: more than 10% of grid points failed");
  return {SampledFunction(std::vector<double>(grid.begin(), grid.end()), std::move(values),
                          interpolation),
          std::move(failed)};
}

TransformResult tilde_g(const RealFunction& q, double t, KernelOrder n,
                        const QuadratureConfig& cfg) {
  check_t(t, "tilde_g");
  return power_weighted_integral(q, t, n.n(), cfg);
}

TransformResult g_prime(const RealFunction& q, double t, KernelOrder n,
                        const QuadratureConfig& cfg) {
  check_t(t, "g_prime");
  TransformResult res = power_weighted_integral(q, t, n.n(), cfg);
  const double scale = std::pow(t, -(n.n() + 1));
  res.value *= scale;
  res.error_estimate *= scale;
  return res;
}

TransformResult tilde_g_derivative(const RealFunction& q, double t, KernelOrder n, int k,
                                   const QuadratureConfig& cfg) {
  check_t(t, "tilde_g_derivative");
  if (k < 0 || k > n.n())
    throw DomainError("tilde_g_derivative: need 0 <= k <= n");
  TransformResult res = power_weighted_integral(q, t, n.n() - k, cfg);
  const double scale = factorial(n.n()) / factorial(n.n() - k);
  res.value *= scale;
  res.error_estimate *= scale;
  return res;
}

IntegrabilityReport integrability_check(const RealFunction& q, double t,
                                        const QuadratureConfig& cfg) {
  check_t(t, "integrability_check");
  IntegrabilityReport report{
      integrate_log_singular(q, t, cfg),
      integrate_log_singular([&q](double y) { return std::abs(std::log(y)) * q(y); }, t, cfg),
      IntegrabilityReport::Verdict::finite};
  if (!report.q_integral.converged || !report.log_weighted_integral.converged)
    report.verdict = IntegrabilityReport::Verdict::suspect_divergent;
  return report;
}

DerivativeConsistency derivative_consistency(const RealFunction& q, double t, KernelOrder n,
                                             const QuadratureConfig& cfg) {
  check_t(t, "derivative_consistency");
  const double analytic = g_prime(q, t, n, cfg).value;
  const RealFunction g = [&q, n, &cfg](double s) { return direct_transform(q, s, n, cfg).value; };
  const double numeric = richardson_derivative_central(g, t, 1, 0.05 * t, 6);
  const double rel_err = std::abs(analytic - numeric) /
                         std::max(std::abs(analytic), 1e-300);
  return {analytic, numeric, rel_err};
}

}  // namespace khab
