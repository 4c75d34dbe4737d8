#pragma once

#include <functional>

namespace khab {

using RealFunction = std::function<double(double)>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_subdivisions = 1000;
  double geometric_ratio = 0.5;  // endpoint refinement ratio for singular integrals

  void validate() const;
};

/// Outcome of a quadrature (or of an operation built on one).
struct TransformResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int subdivisions_used = 0;
  bool divergence_suspected = false;
};

/// Integral of f over [a, b] by adaptive panel bisection. Panels use
/// fixed-order Gauss-Legendre with a halved-panel second estimate for
/// error control; the worst panel is split until the summed error meets
/// max(abs_tol, rel_tol*|value|) or max_subdivisions is exhausted.
/// Non-convergence is reported through the flags, not an exception.
TransformResult integrate_adaptive(const RealFunction& f, double a, double b,
                                   const QuadratureConfig& cfg = {});

/// Integral of f over (0, b] where f may grow like |ln y| (or an
/// integrable power) toward 0. Panels [b*r^(k+1), b*r^k] are summed with
/// geometric refinement toward the origin until the estimated tail is
/// negligible. If panel contributions fail to decay over 10 consecutive
/// panels the result is flagged divergence_suspected.
TransformResult integrate_log_singular(const RealFunction& f, double b,
                                       const QuadratureConfig& cfg = {});

/// Integral of f over [a, infinity). The tail beyond a finite split point
/// T is mapped to (0, 1/T] by t = 1/u and handled by the log-singular
/// scheme; a = 0 is allowed and the lower end is treated as singular.
TransformResult integrate_to_infinity(const RealFunction& f, double a,
                                      const QuadratureConfig& cfg = {});

/// k-th derivative by central differences with a Richardson (Neville)
/// tableau starting at step h0. Used as an independent cross-check of
/// analytic derivative formulas. Returns the best tableau entry; if
/// err_out is non-null it receives the stall-based error estimate.
double richardson_derivative_central(const RealFunction& f, double x, int order,
                                     double h0, int max_levels = 10,
                                     double* err_out = nullptr);

/// One-sided variant (direction = -1 for backward, +1 for forward),
/// for derivatives at a domain boundary.
double richardson_derivative_one_sided(const RealFunction& f, double x, int order,
                                       double h0, int direction, int max_levels = 10,
                                       double* err_out = nullptr);

}  // namespace khab
