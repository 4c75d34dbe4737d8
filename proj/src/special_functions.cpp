#include "khab/special_functions.hpp"

#include <array>
#include <cmath>

#include "khab/errors.hpp"

namespace khab {

namespace {

// Lanczos coefficients, g = 7, 9 terms (Godfrey's table).
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma_positive(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_positive: argument must be positive");
  if (x < 0.5) {
    // Reflection keeps the Lanczos sum in its accurate range.
    return M_PI / (std::sin(M_PI * x) * gamma_positive(1.0 - x));
  }
  const double z = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * sum;
}

double beta_function(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_function: arguments must be positive");
  return gamma_positive(a) * gamma_positive(b) / gamma_positive(a + b);
}

double factorial(int n) {
  if (n < 0 || n > 20) throw DomainError("factorial: n out of [0, 20]");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= static_cast<double>(i);
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw DomainError("binomial: need 0 <= k <= n");
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace khab
