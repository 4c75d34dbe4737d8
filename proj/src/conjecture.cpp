#include "khab/conjecture.hpp"

#include <cmath>

#include <json.hpp>

#include "khab/errors.hpp"
#include "khab/io.hpp"
#include "khab/kernel.hpp"
#include "khab/transform.hpp"

namespace khab {

void ConjectureParams::validate() const {
  if (!(alpha > 0.0)) throw DomainError("ConjectureParams: alpha must be positive");
  if (n < 1) throw DomainError("ConjectureParams: n must be >= 1");
  if (n - 1 > KernelOrder::kMaxOrder)
    throw DomainError("ConjectureParams: premise kernel order n-1 exceeds the supported range");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::premise_violated: return "premise-violated";
    case Verdict::bound_exceeded: return "bound-exceeded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double premise_lhs(const RealFunction& q, double t, const ConjectureParams& p,
                   const QuadratureConfig& cfg) {
  p.validate();
  return direct_transform(q, t, KernelOrder(p.n - 1), cfg).value;
}

namespace {

// ln(1 + t^(-2 alpha)) with both ends kept in range: the direct form
// overflows t^(-2 alpha) for small t, so below 1 it is rewritten as
// ln(1 + t^(2 alpha)) - 2 alpha ln t.
double log_weight(double t, double alpha) {
  if (t >= 1.0) return std::log1p(std::pow(t, -2.0 * alpha));
  return std::log1p(std::pow(t, 2.0 * alpha)) - 2.0 * alpha * std::log(t);
}

}  // namespace

TransformResult conclusion_lhs(const RealFunction& q, double alpha,
                               const QuadratureConfig& cfg) {
  if (!(alpha > 0.0)) throw DomainError("conclusion_lhs: alpha must be positive");
  const RealFunction integrand = [&q, alpha](double t) { return q(t) * log_weight(t, alpha); };
  return integrate_to_infinity(integrand, 0.0, cfg);
}

double conclusion_rhs(const ConjectureParams& p) {
  p.validate();
  double prod = 1.0;
  for (int k = 1; k <= p.n - 1; ++k) prod *= 1.0 + p.alpha / static_cast<double>(k);
  return M_PI * p.alpha * prod;
}

PowerLawMix extremal_q(const ConjectureParams& p) {
  p.validate();
  const double c = 1.0 / transform_constant(KernelOrder(p.n - 1), p.alpha - 1.0).value;
  return PowerLawMix({{c, p.alpha - 1.0}});
}

namespace {

ConjectureReport check_impl(const RealFunction& q, const ConjectureParams& p,
                            std::span<const double> t_grid, const QuadratureConfig& cfg,
                            const ConjectureTolerances& tols, std::string family_id) {
  p.validate();
  if (t_grid.empty()) throw ConfigError("conjecture check: empty t grid");

  ConjectureReport report;
  report.alpha = p.alpha;
  report.n = p.n;
  report.family_id = std::move(family_id);

  bool diverged = false;
  report.premise_ok = true;
  report.premise_margins.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw DomainError("conjecture check: grid points must be positive");
    const TransformResult lhs = direct_transform(q, t, KernelOrder(p.n - 1), cfg);
    if (lhs.divergence_suspected) diverged = true;
    const double ta = std::pow(t, p.alpha);
    const double margin = ta - lhs.value;
    report.premise_margins.push_back({t, lhs.value, ta, margin});
    if (margin < -tols.tol_premise * ta) report.premise_ok = false;
  }

  report.conclusion_value = conclusion_lhs(q, p.alpha, cfg);
  if (report.conclusion_value.divergence_suspected) diverged = true;
  report.bound = conclusion_rhs(p);
  report.ratio = report.conclusion_value.value / report.bound;

  if (diverged) {
    report.verdict = Verdict::inconclusive;
  } else if (!report.premise_ok) {
    report.verdict = Verdict::premise_violated;
  } else if (report.ratio > 1.0 + tols.tol_ratio) {
    report.verdict = Verdict::bound_exceeded;
  } else {
    report.verdict = Verdict::consistent;
  }
  return report;
}

}  // namespace

ConjectureReport check(const RealFunction& q, const ConjectureParams& p,
                       std::span<const double> t_grid, const QuadratureConfig& cfg,
                       const ConjectureTolerances& tols) {
  return check_impl(q, p, t_grid, cfg, tols, "function");
}

ConjectureReport check(const PowerLawMix& q, const ConjectureParams& p,
                       std::span<const double> t_grid, const QuadratureConfig& cfg,
                       const ConjectureTolerances& tols) {
  if (!q.nonnegative_coefficients())
    throw DomainError("conjecture check: q must be nonnegative (negative coefficient found)");
  return check_impl(q.evaluator(), p, t_grid, cfg, tols, "mix");
}

ConjectureFamily extremal_family() {
  return {"extremal", [](const ConjectureParams& p) {
            return std::vector<PowerLawMix>{extremal_q(p)};
          }};
}

std::vector<ConjectureReport> sweep(std::span<const double> alphas, std::span<const int> ns,
                                    const ConjectureFamily& family,
                                    std::span<const double> t_grid,
                                    const QuadratureConfig& cfg,
                                    const ConjectureTolerances& tols) {
  std::vector<ConjectureReport> reports;
  for (double alpha : alphas) {
    for (int n : ns) {
      const ConjectureParams p{alpha, n};
      std::vector<PowerLawMix> members;
      try {
        p.validate();
        members = family.members(p);
      } catch (const std::exception&) {
        ConjectureReport failed;
        failed.alpha = alpha;
        failed.n = n;
        failed.family_id = family.name + "[0]";
        failed.verdict = Verdict::inconclusive;
        reports.push_back(std::move(failed));
        continue;
      }
      for (std::size_t m = 0; m < members.size(); ++m) {
        const std::string id = family.name + "[" + std::to_string(m) + "]";
        try {
          ConjectureReport r =
              check_impl(members[m].evaluator(), p, t_grid, cfg, tols, id);
          reports.push_back(std::move(r));
        } catch (const std::exception&) {
          ConjectureReport failed;
          failed.alpha = alpha;
          failed.n = n;
          failed.family_id = id;
          failed.verdict = Verdict::inconclusive;
          reports.push_back(std::move(failed));
        }
      }
    }
  }
  return reports;
}

std::string report_to_json(const ConjectureReport& report) {
  nlohmann::json margins = nlohmann::json::array();
  for (const PremiseSample& s : report.premise_margins)
    margins.push_back({{"t", s.t}, {"lhs", s.lhs}, {"t_alpha", s.t_alpha}, {"margin", s.margin}});
  nlohmann::json j{
      {"alpha", report.alpha},
      {"n", report.n},
      {"family_id", report.family_id},
      {"premise_ok", report.premise_ok},
      {"premise_margins", margins},
      {"conclusion",
       {{"value", report.conclusion_value.value},
        {"error_estimate", report.conclusion_value.error_estimate},
        {"converged", report.conclusion_value.converged},
        {"divergence_suspected", report.conclusion_value.divergence_suspected},
        {"subdivisions_used", report.conclusion_value.subdivisions_used}}},
      {"bound", report.bound},
      {"ratio", report.ratio},
      {"verdict", to_string(report.verdict)}};
  return j.dump(2) + "\n";
}

std::string sweep_summary_csv(std::span<const ConjectureReport> reports) {
  std::string out = "alpha,n,family_id,premise_ok,ratio,verdict\n";
  for (const ConjectureReport& r : reports) {
    out += format_double(r.alpha) + "," + std::to_string(r.n) + "," + r.family_id + "," +
           (r.premise_ok ? "true" : "false") + "," + format_double(r.ratio) + "," +
           to_string(r.verdict) + "\n";
  }
  return out;
}

}  // namespace khab
