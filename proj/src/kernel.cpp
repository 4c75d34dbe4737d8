#include "khab/kernel.hpp"

#include <cmath>
#include <string>

#include "khab/errors.hpp"

namespace khab {

KernelOrder::KernelOrder(int n) : n_(n) {
  if (n < 0 || n > kMaxOrder)
    throw DomainError("KernelOrder: n must lie in [0, " + std::to_string(kMaxOrder) + "]");
}

void KernelEvalConfig::validate() const {
  if (!(series_switch_threshold > 0.0 && series_switch_threshold < 1.0))
    throw ConfigError("KernelEvalConfig: series_switch_threshold must lie in (0, 1)");
  if (!(series_tolerance > 0.0))
    throw ConfigError("KernelEvalConfig: series_tolerance must be positive");
}

namespace {

void check_unit_interval(double x) {
  if (!(x > 0.0) || x > 1.0) throw DomainError("kernel: x must lie in (0, 1]");
}

}  // namespace

double kernel_value_closed_form(KernelOrder n, double x) {
  check_unit_interval(x);
  if (x == 1.0) return 0.0;
  const double u = 1.0 - x;
  double sum = 0.0;
  double upow = 1.0;
  for (int m = 1; m <= n.n(); ++m) {
    upow *= u;
    sum += upow / m;
  }
  return -std::log(x) - sum;
}

double kernel_value_series(KernelOrder n, double x, double rel_tol) {
  check_unit_interval(x);
  if (x == 1.0) return 0.0;
  if (!(rel_tol > 0.0)) throw ConfigError("kernel_value_series: rel_tol must be positive");
  const double u = 1.0 - x;
  double upow = std::pow(u, n.n() + 1);
  double sum = 0.0;
  // remainder after m terms is bounded by u^(m+1) / ((m+1) x)
  for (int m = n.n() + 1; m < 2000000; ++m) {
    sum += upow / m;
    upow *= u;
    if (upow / ((m + 1) * x) <= rel_tol * sum) break;
  }
  return sum;
}

double kernel_value(KernelOrder n, double x, const KernelEvalConfig& cfg) {
  cfg.validate();
  check_unit_interval(x);
  if (x == 1.0) return 0.0;
  if (1.0 - x < cfg.series_switch_threshold)
    return kernel_value_series(n, x, cfg.series_tolerance);
  return kernel_value_closed_form(n, x);
}

double kernel_derivative(KernelOrder n, double x) {
  check_unit_interval(x);
  return -std::pow(1.0 - x, n.n()) / x;
}

KernelPartials kernel_partials(KernelOrder n, double y, double t) {
  if (!(y > 0.0) || !(t > 0.0) || y > t)
    throw DomainError("kernel_partials: need 0 < y <= t");
  // (t-y)^n / t^n computed as (1 - y/t)^n to stay in range for large t
  const double p = std::pow(1.0 - y / t, n.n());
  return {-p / y, p / t};
}

double kernel_derivative_at_one(KernelOrder n, int k) {
  if (k < 0 || k > n.n())
    throw DomainError("kernel_derivative_at_one: need 0 <= k <= n");
  return 0.0;
}

}  // namespace khab
