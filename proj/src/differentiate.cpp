#include "khab/differentiate.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "khab/errors.hpp"
#include "khab/special_functions.hpp"

namespace khab {

void DiffConfig::validate(int order) const {
  if (order < 1) throw ConfigError("differentiate: order must be >= 1");
  if (order > 13) throw ConfigError("differentiate: order must be <= 13");
  if (fit_degree < 1) throw ConfigError("DiffConfig: fit_degree must be >= 1");
  if (fit_degree < order) throw ConfigError("DiffConfig: fit_degree must be >= derivative order");
  if (window_points < fit_degree + 1)
    throw ConfigError("DiffConfig: window_points must be >= fit_degree + 1");
  if (!(window_half_width > 0.0 && window_half_width < 1.0))
    throw ConfigError("DiffConfig: window_half_width must lie in (0, 1)");
}

namespace {

std::vector<double> window_nodes(double t, const DiffConfig& cfg) {
  const int m = cfg.window_points;
  const double delta = cfg.window_half_width;
  std::vector<double> x(m);
  if (cfg.grid_spacing_rule == GridSpacing::log_uniform) {
    const double lo = std::log(t * (1.0 - delta));
    const double hi = std::log(t * (1.0 + delta));
    for (int i = 0; i < m; ++i)
      x[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / (m - 1));
  } else {
    const double lo = t * (1.0 - delta);
    const double hi = t * (1.0 + delta);
    for (int i = 0; i < m; ++i) x[i] = lo + (hi - lo) * static_cast<double>(i) / (m - 1);
  }
  return x;
}

// Chebyshev polynomial coefficient table: row j holds the monomial
// coefficients of T_j. Keeps the Vandermonde solve well conditioned while
// the final answer stays in plain monomial form.
std::vector<std::vector<double>> chebyshev_monomial_table(int degree) {
  std::vector<std::vector<double>> t(degree + 1);
  t[0] = {1.0};
  if (degree >= 1) t[1] = {0.0, 1.0};
  for (int j = 2; j <= degree; ++j) {
    t[j].assign(j + 1, 0.0);
    for (int i = 0; i <= j - 1; ++i) t[j][i + 1] += 2.0 * t[j - 1][i];
    for (std::size_t i = 0; i < t[j - 2].size(); ++i) t[j][i] -= t[j - 2][i];
  }
  return t;
}

}  // namespace

LocalPolyFit fit_polynomial_at_points(std::span<const double> xs, std::span<const double> ys,
                                      double t, int fit_degree) {
  const int m = static_cast<int>(xs.size());
  const int d = fit_degree;
  if (d < 1) throw ConfigError("fit_polynomial_at_points: fit_degree must be >= 1");
  if (m < d + 1 || ys.size() != xs.size())
    throw ConfigError("fit_polynomial_at_points: need at least fit_degree + 1 samples");
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(x - t));
  if (!(scale > 0.0)) throw ConfigError("fit_polynomial_at_points: degenerate window");

  Eigen::MatrixXd design(m, d + 1);
  Eigen::VectorXd y(m);
  for (int i = 0; i < m; ++i) {
    const double s = (xs[i] - t) / scale;  // in [-1, 1]
    double t0 = 1.0, t1 = s;
    design(i, 0) = 1.0;
    if (d >= 1) design(i, 1) = s;
    for (int j = 2; j <= d; ++j) {
      const double t2 = 2.0 * s * t1 - t0;
      design(i, j) = t2;
      t0 = t1;
      t1 = t2;
    }
    if (!std::isfinite(ys[i]))
      throw EvaluationError("fit_polynomial_at_points: non-finite sample");
    y(i) = ys[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < d + 1)
    throw ConfigError("fit_polynomial_at_points: rank-deficient node matrix");
  const Eigen::VectorXd cheb = qr.solve(y);
  const double rss = (design * cheb - y).norm();
  const int dof = std::max(m - (d + 1), 1);
  const double sigma = rss / std::sqrt(static_cast<double>(dof));

  // Chebyshev -> monomial in s, then rescale to powers of (x - t).
  const auto table = chebyshev_monomial_table(d);
  std::vector<double> mono(d + 1, 0.0);
  for (int j = 0; j <= d; ++j)
    for (std::size_t i = 0; i < table[j].size(); ++i) mono[i] += cheb(j) * table[j][i];

  // Sensitivity of each monomial coefficient to sample noise, via the
  // pseudoinverse rows.
  const Eigen::MatrixXd pinv = qr.solve(Eigen::MatrixXd::Identity(m, m));
  std::vector<double> noise(d + 1, 0.0);
  for (int i = 0; i <= d; ++i) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(m);
    for (int j = 0; j <= d; ++j) {
      if (i < static_cast<int>(table[j].size()) && table[j][i] != 0.0)
        row += table[j][i] * pinv.row(j);
    }
    noise[i] = sigma * row.norm();
  }

  LocalPolyFit fit;
  fit.center = t;
  fit.coeffs.resize(d + 1);
  fit.coeff_noise.resize(d + 1);
  double pw = 1.0;
  for (int k = 0; k <= d; ++k) {
    fit.coeffs[k] = mono[k] / pw;
    fit.coeff_noise[k] = noise[k] / pw;
    pw *= scale;
  }
  fit.residual_rms = sigma;
  return fit;
}

LocalPolyFit fit_local_polynomial(const RealFunction& f, double t, const DiffConfig& cfg) {
  if (!(t > 0.0)) throw DomainError("fit_local_polynomial: t must be positive");
  const std::vector<double> x = window_nodes(t, cfg);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  return fit_polynomial_at_points(x, y, t, cfg.fit_degree);
}

double differentiate(const RealFunction& f, double t, int order, const DiffConfig& cfg) {
  cfg.validate(order);
  if (!(t > 0.0)) throw DomainError("differentiate: t must be positive");
  const LocalPolyFit fit = fit_local_polynomial(f, t, cfg);
  return factorial(order) * fit.coeffs[static_cast<std::size_t>(order)];
}

}  // namespace khab
