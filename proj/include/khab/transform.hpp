#pragma once

#include <span>
#include <vector>

#include "khab/funcspace.hpp"
#include "khab/kernel.hpp"
#include "khab/quadrature.hpp"

namespace khab {

/// g(t) = integral over (0, t] of A_n(y/t) q(y) dy; the integrand carries
/// the kernel's logarithmic growth at y -> 0, so the log-singular scheme
/// does the work. A divergence flag in the result signals a q outside the
/// integrability hypothesis.
TransformResult direct_transform(const RealFunction& q, double t, KernelOrder n,
                                 const QuadratureConfig& cfg = {});

struct GridTransform {
  SampledFunction g;
  std::vector<std::size_t> failed_points;  // indices whose quadrature did not converge
};

/// Batch direct transform over a grid. Individual failures are recorded;
/// more than 10% failing raises EvaluationError.
GridTransform direct_transform_grid(const RealFunction& q, std::span<const double> grid,
                                    KernelOrder n, const QuadratureConfig& cfg = {},
                                    Interpolation interpolation = Interpolation::cubic);

/// g'(t) = t^-(n+1) * integral of (t-y)^n q(y) dy.
TransformResult g_prime(const RealFunction& q, double t, KernelOrder n,
                        const QuadratureConfig& cfg = {});

/// The auxiliary transform gtilde(t) = t^(n+1) g'(t) =
/// integral of (t-y)^n q(y) dy, free of the logarithmic factor.
TransformResult tilde_g(const RealFunction& q, double t, KernelOrder n,
                        const QuadratureConfig& cfg = {});

/// d^k gtilde / dt^k = n!/(n-k)! * integral of (t-y)^(n-k) q(y) dy for
/// 0 <= k <= n; at k = n this collapses to n! * integral of q.
TransformResult tilde_g_derivative(const RealFunction& q, double t, KernelOrder n, int k,
                                   const QuadratureConfig& cfg = {});

struct IntegrabilityReport {
  TransformResult q_integral;             // integral of q over (0, t]
  TransformResult log_weighted_integral;  // integral of |ln y| q(y) over (0, t]
  enum class Verdict { finite, suspect_divergent } verdict;
};

/// Numerical surrogate for the finiteness hypothesis behind the
/// transform pair: both integrals must converge. A diagnostic, not a
/// proof.
IntegrabilityReport integrability_check(const RealFunction& q, double t,
                                        const QuadratureConfig& cfg = {});

struct DerivativeConsistency {
  double analytic;
  double numeric;
  double rel_err;
};

/// Cross-check of the g' formula against a finite difference of the
/// direct transform itself.
DerivativeConsistency derivative_consistency(const RealFunction& q, double t, KernelOrder n,
                                             const QuadratureConfig& cfg = {});

}  // namespace khab
