#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "khab/funcspace.hpp"
#include "khab/quadrature.hpp"

namespace khab {

/// Parameters of the inequality pair: alpha > 0 and the integer n >= 1.
/// The premise inequality uses kernel order n-1; the conversion formulas
/// use order n. A single n is stored here and shifted internally, since
/// an off-by-one in that convention would invalidate everything.
struct ConjectureParams {
  double alpha;
  int n;

  void validate() const;
};

struct ConjectureTolerances {
  double tol_premise = 1e-9;  // allowed premise overshoot relative to t^alpha
  double tol_ratio = 1e-3;    // allowed conclusion/bound overshoot
};

enum class Verdict { consistent, premise_violated, bound_exceeded, inconclusive };

std::string to_string(Verdict v);

struct PremiseSample {
  double t;
  double lhs;
  double t_alpha;
  double margin;  // t^alpha - lhs
};

struct ConjectureReport {
  double alpha = 0.0;
  int n = 0;
  std::string family_id;
  std::vector<PremiseSample> premise_margins;
  bool premise_ok = false;
  TransformResult conclusion_value;
  double bound = 0.0;
  double ratio = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Left side of the premise at one point: integral over (0, t] of
/// A_{n-1}(y/t) q(y) dy, to be compared with t^alpha.
double premise_lhs(const RealFunction& q, double t, const ConjectureParams& p,
                   const QuadratureConfig& cfg = {});

/// Conclusion integral over (0, infinity) of q(t) ln(1 + t^(-2 alpha)) dt.
TransformResult conclusion_lhs(const RealFunction& q, double alpha,
                               const QuadratureConfig& cfg = {});

/// Conclusion bound pi alpha prod_{k=1..n-1} (1 + alpha/k); the empty
/// product at n = 1 is 1.
double conclusion_rhs(const ConjectureParams& p);

/// The power law q(t) = t^(alpha-1) / C(n-1, alpha-1) saturating the
/// premise inequality at every t.
PowerLawMix extremal_q(const ConjectureParams& p);

/// Full verification at one parameter point: premise margins over the
/// grid (a finite surrogate for "for all t"), conclusion against the
/// bound, and the verdict.
ConjectureReport check(const RealFunction& q, const ConjectureParams& p,
                       std::span<const double> t_grid, const QuadratureConfig& cfg = {},
                       const ConjectureTolerances& tols = {});
/// PowerLawMix overload; also validates the nonnegativity requirement.
ConjectureReport check(const PowerLawMix& q, const ConjectureParams& p,
                       std::span<const double> t_grid, const QuadratureConfig& cfg = {},
                       const ConjectureTolerances& tols = {});

/// One or more test functions per parameter point.
struct ConjectureFamily {
  std::string name;
  std::function<std::vector<PowerLawMix>(const ConjectureParams&)> members;
};

/// The built-in premise-saturating family, one member per (alpha, n).
ConjectureFamily extremal_family();

/// Reports for every (alpha, n, member) cell in deterministic order.
/// Per-cell failures become inconclusive reports; the sweep continues.
std::vector<ConjectureReport> sweep(std::span<const double> alphas, std::span<const int> ns,
                                    const ConjectureFamily& family,
                                    std::span<const double> t_grid,
                                    const QuadratureConfig& cfg = {},
                                    const ConjectureTolerances& tols = {});

/// Full report as JSON; summary row as CSV (alpha, n, family_id,
/// premise_ok, ratio, verdict).
std::string report_to_json(const ConjectureReport& report);
std::string sweep_summary_csv(std::span<const ConjectureReport> reports);

}  // namespace khab
