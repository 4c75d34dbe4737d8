#pragma once

#include <span>

#include "khab/differentiate.hpp"
#include "khab/funcspace.hpp"
#include "khab/kernel.hpp"
#include "khab/transform.hpp"

namespace khab {

enum class InverseMode { analytic_if_possible, numeric_only };

struct InverseConfig {
  DiffConfig diff;
  InverseMode mode = InverseMode::analytic_if_possible;

  InverseConfig() {
    diff.window_points = 0;  // 0 = resolve per order: 2(n+4)+1
    diff.fit_degree = 0;     // 0 = resolve per order: n+3
  }

  /// Fill the auto fields for kernel order n; validates fit_degree >= n+3.
  /// The callable path defaults to 2(n+4)+1 window points of degree n+3.
  DiffConfig resolved_diff(KernelOrder n) const;
  /// Grid-sample path: wider window (4(n+4)+1 nearest samples) and degree
  /// n+8. Grid data carries a quadrature-noise floor where |g| is near
  /// the absolute tolerance, and the extra samples buy back the smoothing
  /// that the higher (truncation-driven) degree costs.
  DiffConfig resolved_diff_sampled(KernelOrder n) const;
};

struct InverseResult {
  double value = 0.0;
  double noise_estimate = 0.0;      // propagated fit-residual noise
  bool conditioning_warning = false;  // raised when n+2 > 8
};

/// q(t) recovered from g by the inverse conversion: one local polynomial
/// fit p of degree >= n+3 to g around t, then the (n+1)-th derivative of
/// t^(n+1) p'(t) / n! taken exactly on the polynomial. A single fit keeps
/// all the differentiation error in one place.
InverseResult inverse_transform_numeric(const RealFunction& g, double t, KernelOrder n,
                                        const InverseConfig& cfg = {});

/// Sampled-data path: the fit runs through the window_points grid samples
/// nearest t rather than through resampled interpolant values, since
/// interpolation error under an order-(n+1) derivative swamps the result.
InverseResult inverse_transform_sampled(const SampledFunction& g, double t, KernelOrder n,
                                        const InverseConfig& cfg = {});

/// Dispatching front end: a PowerLawMix g goes through the exact closed
/// form unless numeric_only is requested.
double inverse_transform(const PowerLawMix& g, double t, KernelOrder n,
                         const InverseConfig& cfg = {});
double inverse_transform(const RealFunction& g, double t, KernelOrder n,
                         const InverseConfig& cfg = {});

/// Transform q over the grid, invert the sampled g at every interior
/// point whose fit window stays inside the sampled range, and return the
/// largest relative error against the true q.
double roundtrip_residual(const RealFunction& q, std::span<const double> grid, KernelOrder n,
                          const InverseConfig& cfg = {}, const QuadratureConfig& quad = {});

}  // namespace khab
