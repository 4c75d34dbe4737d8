#pragma once

namespace khab {

/// Gamma function for positive real argument (Lanczos approximation,
/// relative error below 1e-13 for the 0 < x <= 30 range used here).
double gamma_positive(double x);

/// Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b), a, b > 0.
double beta_function(double a, double b);

/// n! as a double, n <= 20.
double factorial(int n);

/// Binomial coefficient for small integer arguments (exact in double).
double binomial(int n, int k);

}  // namespace khab
