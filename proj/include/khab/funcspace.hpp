#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "khab/kernel.hpp"
#include "khab/quadrature.hpp"

namespace khab {

struct PowerTerm {
  double c;
  double beta;
};

/// Finite sum of power laws c_j t^(beta_j) with beta_j > -1; the analytic
/// family on which both transform directions have exact closed forms.
/// Exponents at or below -1 are rejected at construction: that is exactly
/// where the transform integrals stop being finite.
class PowerLawMix {
 public:
  PowerLawMix() = default;
  explicit PowerLawMix(std::vector<PowerTerm> terms);

  static PowerLawMix zero() { return PowerLawMix{}; }

  double operator()(double t) const;
  const std::vector<PowerTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool nonnegative_coefficients() const;

  PowerLawMix scaled(double factor) const;
  /// Term-wise derivative; terms whose coefficient vanishes are dropped.
  PowerLawMix differentiated() const;
  /// Term-wise multiplication by t^power.
  PowerLawMix multiplied_by_power(double power) const;

  RealFunction evaluator() const;

 private:
  std::vector<PowerTerm> terms_;
};

enum class Interpolation { cubic, linear };

/// Function known on a strictly increasing positive grid, evaluated by
/// natural cubic spline or linear interpolation. No extrapolation: the
/// inverse conversion amplifies extrapolation noise by order n+2.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> grid, std::vector<double> values,
                  Interpolation interpolation = Interpolation::cubic);

  double operator()(double t) const;
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  Interpolation interpolation() const { return interpolation_; }
  double min() const { return grid_.front(); }
  double max() const { return grid_.back(); }

  RealFunction evaluator() const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> second_derivs_;  // natural spline moments (cubic only)
  Interpolation interpolation_;
};

/// C(n, beta) = integral of A_n(x) x^beta over (0, 1]; the direct
/// transform is exact on power laws through it: c t^beta maps to
/// c C(n, beta) t^(beta+1).
struct TransformConstant {
  int n;
  double beta;
  double value;
};

TransformConstant transform_constant(KernelOrder n, double beta);

/// Direct conversion on the power-law class: term-wise (c, beta) ->
/// (c * C(n, beta), beta + 1).
PowerLawMix closed_form_transform(const PowerLawMix& q, KernelOrder n);

/// Inverse conversion on the power-law class. Every exponent gamma of g
/// must be positive; term-wise the coefficient picks up
/// gamma^2 (gamma+1) ... (gamma+n) / n! and the exponent drops by one.
PowerLawMix closed_form_inverse(const PowerLawMix& g, KernelOrder n);

// --- serialization ---

std::string to_json_string(const PowerLawMix& mix);
PowerLawMix mix_from_json_string(const std::string& text);
void save_mix_json(const PowerLawMix& mix, const std::string& path);
PowerLawMix load_mix_json(const std::string& path);

/// CSV with header "t,value".
std::string to_csv_string(const SampledFunction& f);
/// Accepts any CSV whose first column is t and which has a "value" or
/// "g" column (falling back to the second column), so transform output
/// files can be fed straight back in.
SampledFunction sampled_from_csv_string(const std::string& text,
                                        Interpolation interpolation = Interpolation::cubic);
void save_sampled_csv(const SampledFunction& f, const std::string& path);
SampledFunction load_sampled_csv(const std::string& path,
                                 Interpolation interpolation = Interpolation::cubic);

}  // namespace khab
