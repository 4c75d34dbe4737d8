#pragma once

namespace khab {

/// Order parameter of the kernel A_n and the transform pair. Orders above
/// 12 are rejected: the inverse conversion needs an order-(n+1) numerical
/// derivative, which is hopeless in double precision beyond that.
class KernelOrder {
 public:
  static constexpr int kMaxOrder = 12;

  explicit KernelOrder(int n);
  int n() const { return n_; }

 private:
  int n_;
};

struct KernelEvalConfig {
  // Switch to the series once 1-x drops below this threshold. The closed
  // form subtracts two nearly equal quantities when A_n(x) is small
  // against -ln x, so the series handles everything except the far
  // logarithmic end.
  double series_switch_threshold = 0.9;
  double series_tolerance = 1e-15;  // relative truncation target

  void validate() const;
};

/// A_n(x) on (0, 1]: exactly 0 at x = 1, -ln x - sum_{m=1..n} (1-x)^m / m
/// in closed form, with the tail series used near x = 1 per config.
double kernel_value(KernelOrder n, double x, const KernelEvalConfig& cfg = {});

/// Closed-form evaluation path (for path-agreement checks).
double kernel_value_closed_form(KernelOrder n, double x);

/// Series evaluation path sum_{m=n+1..M} (1-x)^m / m, truncated when the
/// remainder bound (1-x)^(M+1) / ((M+1) x) drops below rel_tol times the
/// accumulated sum.
double kernel_value_series(KernelOrder n, double x, double rel_tol = 1e-15);

/// dA_n/dx = -(1-x)^n / x on (0, 1].
double kernel_derivative(KernelOrder n, double x);

struct KernelPartials {
  double d_dy;
  double d_dt;
};

/// Partial derivatives of the composite form A_n(y/t) for 0 < y <= t:
/// d/dy = -(t-y)^n / (t^n y), d/dt = (t-y)^n / t^(n+1).
KernelPartials kernel_partials(KernelOrder n, double y, double t);

/// The vanishing conditions d^k A_n / dx^k |_{x=1} = 0 for 0 <= k <= n,
/// exact by construction; exposed so finite-difference checks have an
/// explicit contract to test against.
double kernel_derivative_at_one(KernelOrder n, int k);

}  // namespace khab
