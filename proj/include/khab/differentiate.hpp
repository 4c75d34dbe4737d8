#pragma once

#include <span>
#include <vector>

#include "khab/quadrature.hpp"

namespace khab {

enum class GridSpacing { log_uniform, uniform };

struct DiffConfig {
  int window_points = 13;
  int fit_degree = 6;
  GridSpacing grid_spacing_rule = GridSpacing::log_uniform;
  double window_half_width = 0.1;  // relative half-width of the sample window

  void validate(int order) const;
};

/// Least-squares polynomial fit of f on a window around t, kept as
/// coefficients of powers of (x - t). Degrees up to ~n+2 derivatives of
/// noisy data are far better behaved through one fit than through stacked
/// difference stencils, so this is the workhorse behind high-order
/// differentiation and the inverse conversion.
struct LocalPolyFit {
  double center = 0.0;
  std::vector<double> coeffs;        // p(x) = sum coeffs[k] (x - center)^k
  std::vector<double> coeff_noise;   // per-coefficient noise scale from the fit residual
  double residual_rms = 0.0;
};

LocalPolyFit fit_local_polynomial(const RealFunction& f, double t, const DiffConfig& cfg);

/// Same fit through explicitly given samples (used when the data lives on
/// a grid already; resampling an interpolant would inject interpolation
/// noise that high-order derivatives amplify).
LocalPolyFit fit_polynomial_at_points(std::span<const double> x, std::span<const double> y,
                                      double t, int fit_degree);

/// d^order f / dt^order at t > 0 by exact differentiation of the local
/// least-squares polynomial. order <= 13.
double differentiate(const RealFunction& f, double t, int order, const DiffConfig& cfg = {});

}  // namespace khab
