#include "khab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "khab/errors.hpp"
#include "khab/special_functions.hpp"

namespace khab {

namespace {

constexpr int kPanelOrder = 15;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration on the Legendre
// recurrence (deterministic, machine precision).
GaussRule make_gauss_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

const GaussRule& panel_rule() {
  static const GaussRule rule = make_gauss_rule(kPanelOrder);
  return rule;
}

double gauss_panel(const RealFunction& f, double a, double b) {
  const GaussRule& rule = panel_rule();
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kPanelOrder; ++i) {
    const double x = mid + hw * rule.nodes[i];
    const double fx = f(x);
    if (!std::isfinite(fx)) throw EvaluationError("integrand returned a non-finite value");
    sum += rule.weights[i] * fx;
  }
  return sum * hw;
}

struct Segment {
  double a, b, value, err;
};

struct SegmentWorse {
  bool operator()(const Segment& lhs, const Segment& rhs) const { return lhs.err < rhs.err; }
};

Segment evaluate_segment(const RealFunction& f, double a, double b) {
  const double coarse = gauss_panel(f, a, b);
  const double mid = 0.5 * (a + b);
  const double fine = gauss_panel(f, a, mid) + gauss_panel(f, mid, b);
  // floor covers the summation roundoff of the node evaluations
  const double err = std::max(std::abs(fine - coarse), 2e-15 * std::abs(fine));
  return {a, b, fine, err};
}

struct CoreResult {
  double value = 0.0;
  double err = 0.0;
  int splits = 0;
};

// Shared adaptive engine: split the worst segment until the summed error
// meets max(abs_tol, rel_tol*|value|) or the split budget runs out.
CoreResult adaptive_core(const RealFunction& f, double a, double b, double abs_tol,
                         double rel_tol, int max_splits) {
  std::priority_queue<Segment, std::vector<Segment>, SegmentWorse> queue;
  Segment first = evaluate_segment(f, a, b);
  double total = first.value;
  double total_err = first.err;
  queue.push(first);
  int splits = 0;
  std::vector<Segment> done;
  while (splits < max_splits) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (total_err <= tol) break;
    Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      done.push_back(worst);  // interval no longer splittable in doubles
      continue;
    }
    const Segment left = evaluate_segment(f, worst.a, mid);
    const Segment right = evaluate_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    queue.push(left);
    queue.push(right);
    ++splits;
  }
  while (!queue.empty()) {
    done.push_back(queue.top());
    queue.pop();
  }
  std::sort(done.begin(), done.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  CoreResult out;
  out.splits = splits;
  for (const Segment& s : done) {
    out.value += s.value;
    out.err += s.err;
  }
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw ConfigError("QuadratureConfig: tolerances must be positive");
  if (max_subdivisions < 1) throw ConfigError("QuadratureConfig: max_subdivisions must be >= 1");
  if (!(geometric_ratio > 0.0 && geometric_ratio < 1.0))
    throw ConfigError("QuadratureConfig: geometric_ratio must lie in (0, 1)");
}

TransformResult integrate_adaptive(const RealFunction& f, double a, double b,
                                   const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(a < b)) throw DomainError("integrate_adaptive: need a < b");
  const CoreResult core = adaptive_core(f, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
  TransformResult res;
  res.value = core.value;
  res.error_estimate = core.err;
  res.subdivisions_used = core.splits;
  res.converged = core.err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(core.value));
  return res;
}

TransformResult integrate_log_singular(const RealFunction& f, double b,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(b > 0.0)) throw DomainError("integrate_log_singular: need b > 0");
  const double r = cfg.geometric_ratio;

  TransformResult res;
  double hi = b;
  double prev_abs = -1.0;
  double prev_ratio = -1.0;
  double tail_est = 0.0;
  int nondecay = 0;
  double ratio_hist[3] = {0.0, 0.0, 0.0};
  bool stopped_by_tail = false;

  for (int k = 0; k < cfg.max_subdivisions; ++k) {
    const double lo = b * std::pow(r, static_cast<double>(k + 1));
    if (!(lo < hi) || lo <= 0.0) break;
    // panels are resolved relative to their own size; an absolute
    // threshold here would cap the overall relative accuracy whenever
    // the integral itself is small
    const CoreResult panel = adaptive_core(f, lo, hi, 1e-300, 0.25 * cfg.rel_tol, 64);
    res.value += panel.value;
    res.error_estimate += panel.err;
    res.subdivisions_used += 1 + panel.splits;

    const double ak = std::abs(panel.value);
    if (prev_abs >= 0.0) {
      const double ratio = prev_abs > 0.0 ? ak / prev_abs : 0.0;
      // Count a panel as non-decaying only once the ratio sequence has
      // stabilized: integrable endpoint singularities pass through a
      // transient of growing panels (the kernel factor switching on)
      // whose ratios fall panel over panel, while true divergence holds
      // its ratio at or above 1.
      const bool ratio_stable = prev_ratio < 0.0 || ratio >= 0.997 * prev_ratio;
      if (ak > cfg.abs_tol && ratio >= 0.999 && ratio_stable) {
        if (++nondecay >= 10) {
          res.divergence_suspected = true;
          break;
        }
      } else {
        nondecay = 0;
      }
      prev_ratio = ratio;
      ratio_hist[k % 3] = ratio;
      double rho = std::max({ratio_hist[0], ratio_hist[1], ratio_hist[2]});
      rho = std::clamp(rho, 0.0, 0.995);
      tail_est = ak * rho / (1.0 - rho);
      const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
      if (k >= 2 && tail_est <= 0.25 * tol && ak <= 0.5 * tol) {
        stopped_by_tail = true;
        break;
      }
    }
    prev_abs = ak;
    hi = lo;
  }

  res.error_estimate += tail_est;
  if (!stopped_by_tail && !res.divergence_suspected) {
    // budget or underflow exit; the tail estimate may be unreliable
    res.error_estimate += std::max(cfg.abs_tol, tail_est);
  }
  res.converged = !res.divergence_suspected &&
                  res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
  return res;
}

TransformResult integrate_to_infinity(const RealFunction& f, double a,
                                      const QuadratureConfig& cfg) {
  cfg.validate();
  if (a < 0.0) throw DomainError("integrate_to_infinity: need a >= 0");
  const double split = std::max(1.0, 2.0 * a);

  TransformResult head;
  if (a == 0.0) {
    head = integrate_log_singular(f, split, cfg);
  } else {
    head = integrate_adaptive(f, a, split, cfg);
  }

  const RealFunction tail_integrand = [&f](double u) {
    const double t = 1.0 / u;
    return f(t) * t * t;
  };
  const TransformResult tail = integrate_log_singular(tail_integrand, 1.0 / split, cfg);

  TransformResult res;
  res.value = head.value + tail.value;
  res.error_estimate = head.error_estimate + tail.error_estimate;
  res.subdivisions_used = head.subdivisions_used + tail.subdivisions_used;
  res.divergence_suspected = head.divergence_suspected || tail.divergence_suspected;
  res.converged = !res.divergence_suspected &&
                  res.error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
  return res;
}

namespace {

// One row of the difference stencil: D(h) for the requested order.
double difference_quotient(const RealFunction& f, double x, int order, double h,
                           int direction) {
  double sum = 0.0;
  if (direction == 0) {
    const double shift = 0.5 * order;
    for (int j = 0; j <= order; ++j) {
      const double c = ((j % 2) ? -1.0 : 1.0) * binomial(order, j);
      sum += c * f(x + (shift - j) * h);
    }
  } else {
    for (int j = 0; j <= order; ++j) {
      double c = ((j % 2) ? -1.0 : 1.0) * binomial(order, j);
      if (direction > 0 && (order % 2)) c = -c;
      sum += c * f(x + direction * j * h);
    }
  }
  return sum / std::pow(h, order);
}

double richardson_tableau(const RealFunction& f, double x, int order, double h0,
                          int direction, int max_levels, double* err_out) {
  if (order < 1) throw DomainError("richardson derivative: order must be >= 1");
  if (!(h0 > 0.0)) throw DomainError("richardson derivative: h0 must be positive");
  // central differences expand in h^2, one-sided in h
  const double step_order = (direction == 0) ? 4.0 : 2.0;

  std::vector<std::vector<double>> t(max_levels);
  double best = difference_quotient(f, x, order, h0, direction);
  double best_err = std::numeric_limits<double>::max();
  t[0] = {best};
  double h = h0;
  int stale_levels = 0;
  for (int i = 1; i < max_levels; ++i) {
    h *= 0.5;
    t[i].resize(i + 1);
    t[i][0] = difference_quotient(f, x, order, h, direction);
    double factor = step_order;
    bool improved = false;
    for (int m = 1; m <= i; ++m) {
      t[i][m] = (factor * t[i][m - 1] - t[i - 1][m - 1]) / (factor - 1.0);
      factor *= step_order;
      const double err = std::max(std::abs(t[i][m] - t[i][m - 1]),
                                  std::abs(t[i][m] - t[i - 1][m - 1]));
      if (err < best_err) {
        best_err = err;
        best = t[i][m];
        improved = true;
      }
    }
    // once refinement stops paying (noise floor reached), stop before
    // cancellation noise takes over
    stale_levels = improved ? 0 : stale_levels + 1;
    if (stale_levels >= 2) break;
  }
  if (err_out) *err_out = best_err;
  return best;
}

}  // namespace

double richardson_derivative_central(const RealFunction& f, double x, int order, double h0,
                                     int max_levels, double* err_out) {
  return richardson_tableau(f, x, order, h0, 0, max_levels, err_out);
}

double richardson_derivative_one_sided(const RealFunction& f, double x, int order, double h0,
                                       int direction, int max_levels, double* err_out) {
  if (direction != 1 && direction != -1)
    throw DomainError("richardson_derivative_one_sided: direction must be +1 or -1");
  return richardson_tableau(f, x, order, h0, direction, max_levels, err_out);
}

}  // namespace khab
