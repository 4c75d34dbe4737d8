#include "khab/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "khab/errors.hpp"
#include "khab/special_functions.hpp"

namespace khab {

DiffConfig InverseConfig::resolved_diff(KernelOrder n) const {
  DiffConfig d = diff;
  if (d.fit_degree == 0) d.fit_degree = n.n() + 3;
  if (d.window_points == 0) d.window_points = 2 * (n.n() + 4) + 1;
  if (d.fit_degree < n.n() + 3)
    throw ConfigError("InverseConfig: fit_degree must be >= n + 3");
  d.validate(n.n() + 1);
  return d;
}

DiffConfig InverseConfig::resolved_diff_sampled(KernelOrder n) const {
  DiffConfig d = diff;
  if (d.fit_degree == 0) d.fit_degree = n.n() + 8;
  if (d.window_points == 0) d.window_points = 4 * (n.n() + 4) + 1;
  if (d.fit_degree < n.n() + 3)
    throw ConfigError("InverseConfig: fit_degree must be >= n + 3");
  d.validate(n.n() + 1);
  return d;
}

namespace {

// q(t) = d^(n+1)/dt^(n+1) [ t^(n+1) p'(t) / n! ]. With p as powers of
// z = x - t this is (n+1)! / n! times the z^(n+1) coefficient of
// (z + t)^(n+1) p'(z):
//   (n+1) * sum_i binom(n+1, i) t^(n+1-i) (n+2-i) a_{n+2-i}.
InverseResult assemble_inverse(const LocalPolyFit& fit, double t, KernelOrder n) {
  const int order = n.n() + 1;
  const int d = static_cast<int>(fit.coeffs.size()) - 1;
  double value = 0.0;
  double noise_sq = 0.0;
  for (int i = 0; i <= order; ++i) {
    const int j = order + 1 - i;  // index of the p-coefficient involved
    if (j < 1 || j > d) continue;
    const double w = order * binomial(order, i) * std::pow(t, order - i) * j;
    value += w * fit.coeffs[static_cast<std::size_t>(j)];
    const double nw = w * fit.coeff_noise[static_cast<std::size_t>(j)];
    noise_sq += nw * nw;
  }
  if (!std::isfinite(value))
    throw ConditioningError("inverse_transform: non-finite result from the local fit");

  InverseResult res;
  res.value = value;
  res.noise_estimate = std::sqrt(noise_sq);
  res.conditioning_warning = (n.n() + 2) > 8;
  return res;
}

}  // namespace

InverseResult inverse_transform_numeric(const RealFunction& g, double t, KernelOrder n,
                                        const InverseConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("inverse_transform: t must be positive");
  const DiffConfig dcfg = cfg.resolved_diff(n);
  return assemble_inverse(fit_local_polynomial(g, t, dcfg), t, n);
}

InverseResult inverse_transform_sampled(const SampledFunction& g, double t, KernelOrder n,
                                        const InverseConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("inverse_transform: t must be positive");
  if (t < g.min() || t > g.max())
    throw RangeError("inverse_transform: t outside the sampled range");
  const DiffConfig dcfg = cfg.resolved_diff_sampled(n);
  const std::vector<double>& xs = g.grid();
  const std::size_t m = static_cast<std::size_t>(dcfg.window_points);
  if (xs.size() < m)
    throw ConfigError("inverse_transform: sampled g has fewer points than the fit window");

  // window_points samples nearest t, clipped at the grid ends
  const auto upper = std::upper_bound(xs.begin(), xs.end(), t);
  std::size_t center = static_cast<std::size_t>(upper - xs.begin());
  std::size_t lo = (center > m / 2) ? center - m / 2 : 0;
  if (lo + m > xs.size()) lo = xs.size() - m;

  const std::span<const double> wx(xs.data() + lo, m);
  const std::span<const double> wy(g.values().data() + lo, m);
  return assemble_inverse(fit_polynomial_at_points(wx, wy, t, dcfg.fit_degree), t, n);
}

double inverse_transform(const PowerLawMix& g, double t, KernelOrder n,
                         const InverseConfig& cfg) {
  if (cfg.mode == InverseMode::analytic_if_possible)
    return closed_form_inverse(g, n)(t);
  return inverse_transform_numeric(g.evaluator(), t, n, cfg).value;
}

double inverse_transform(const RealFunction& g, double t, KernelOrder n,
                         const InverseConfig& cfg) {
  return inverse_transform_numeric(g, t, n, cfg).value;
}

double roundtrip_residual(const RealFunction& q, std::span<const double> grid, KernelOrder n,
                          const InverseConfig& cfg, const QuadratureConfig& quad) {
  const DiffConfig dcfg = cfg.resolved_diff_sampled(n);
  const GridTransform gt = direct_transform_grid(q, grid, n, quad);

  const std::size_t margin = static_cast<std::size_t>(dcfg.window_points / 2);
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = margin; i + margin < grid.size(); ++i) {
    const double t = grid[i];
    const double qhat = inverse_transform_sampled(gt.g, t, n, cfg).value;
    const double truth = q(t);
    const double rel = std::abs(qhat - truth) / std::max(std::abs(truth), 1e-300);
    if (rel > worst) worst = rel;
    any = true;
  }
  if (!any) throw ConfigError("roundtrip_residual: no interior points after margins");
  return worst;
}

}  // namespace khab
