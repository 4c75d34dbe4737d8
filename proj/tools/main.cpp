#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "khab/conjecture.hpp"
#include "khab/errors.hpp"
#include "khab/funcspace.hpp"
#include "khab/grid.hpp"
#include "khab/inverse.hpp"
#include "khab/io.hpp"
#include "khab/kernel.hpp"
#include "khab/transform.hpp"

namespace {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("KHAB_LOG_LEVEL");
    if (!env) return LogLevel::warn;
    const std::string s(env);
    if (s == "error") return LogLevel::error;
    if (s == "warn") return LogLevel::warn;
    if (s == "info") return LogLevel::info;
    if (s == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

void log_msg(LogLevel lvl, const std::string& tag, const std::string& msg) {
  if (static_cast<int>(lvl) <= static_cast<int>(log_level()))
    std::cerr << "[" << tag << "] " << msg << "\n";
}
void log_warn(const std::string& msg) { log_msg(LogLevel::warn, "warn", msg); }
void log_info(const std::string& msg) { log_msg(LogLevel::info, "info", msg); }

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitConditioning = 4;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// A q/g specification: PowerLawMix JSON or SampledFunction CSV.
struct FunctionSpec {
  std::optional<khab::PowerLawMix> mix;
  std::optional<khab::SampledFunction> sampled;

  khab::RealFunction evaluator(bool zero_extend) const {
    if (mix) return mix->evaluator();
    const khab::SampledFunction f = *sampled;
    if (!zero_extend) return f.evaluator();
    return [f](double t) {
      if (t < f.min() || t > f.max()) return 0.0;
      return f(t);
    };
  }
};

FunctionSpec load_function_spec(const std::string& path) {
  FunctionSpec spec;
  if (ends_with(path, ".json")) {
    spec.mix = khab::load_mix_json(path);
  } else if (ends_with(path, ".csv")) {
    spec.sampled = khab::load_sampled_csv(path);
  } else {
    throw khab::ConfigError("function spec must be a .json (mix) or .csv (samples) path: " + path);
  }
  return spec;
}

int cmd_kernel(int n_arg, const std::string& grid_spec, const std::string& out_path) {
  const khab::KernelOrder n(n_arg);
  const std::vector<double> grid = khab::parse_grid_spec(grid_spec);
  for (double x : grid) {
    if (!(x > 0.0) || x > 1.0)
      throw khab::DomainError("kernel: grid points must lie in (0, 1]");
  }
  std::string csv = "x,A_n,dA_n_dx\n";
  for (double x : grid) {
    csv += khab::format_double(x) + "," + khab::format_double(khab::kernel_value(n, x)) + "," +
           khab::format_double(khab::kernel_derivative(n, x)) + "\n";
  }
  khab::write_file_atomic(out_path, csv);
  log_info("kernel table with " + std::to_string(grid.size()) + " rows -> " + out_path);
  return kExitOk;
}

int cmd_transform(const std::string& q_path, int n_arg, const std::string& grid_spec,
                  const std::string& out_path, const khab::QuadratureConfig& cfg) {
  const khab::KernelOrder n(n_arg);
  const std::vector<double> grid = khab::parse_grid_spec(grid_spec);
  const FunctionSpec spec = load_function_spec(q_path);
  if (spec.sampled)
    log_warn("sampled q is treated as zero outside [" +
             khab::format_double(spec.sampled->min()) + ", " +
             khab::format_double(spec.sampled->max()) + "]");
  const khab::RealFunction q = spec.evaluator(true);

  const khab::IntegrabilityReport integ = khab::integrability_check(q, grid.back(), cfg);
  if (integ.verdict == khab::IntegrabilityReport::Verdict::suspect_divergent) {
    log_msg(LogLevel::error, "error", "integrability diagnostics flag divergence at t = " +
                                          khab::format_double(grid.back()));
    return kExitDivergence;
  }

  std::string csv = "t,g,g_prime,error_estimate\n";
  bool diverged = false;
  for (double t : grid) {
    const khab::TransformResult g = khab::direct_transform(q, t, n, cfg);
    const khab::TransformResult gp = khab::g_prime(q, t, n, cfg);
    diverged = diverged || g.divergence_suspected || gp.divergence_suspected;
    csv += khab::format_double(t) + "," + khab::format_double(g.value) + "," +
           khab::format_double(gp.value) + "," + khab::format_double(g.error_estimate) + "\n";
  }
  if (diverged) {
    log_msg(LogLevel::error, "error", "quadrature flagged divergence while transforming");
    return kExitDivergence;
  }
  khab::write_file_atomic(out_path, csv);
  log_info("transform over " + std::to_string(grid.size()) + " points -> " + out_path);
  return kExitOk;
}

int cmd_invert(const std::string& g_path, int n_arg, const std::string& grid_spec,
               const std::string& out_path, const std::string& mode) {
  const khab::KernelOrder n(n_arg);
  const std::vector<double> grid = khab::parse_grid_spec(grid_spec);
  const FunctionSpec spec = load_function_spec(g_path);

  khab::InverseConfig cfg;
  cfg.mode = (mode == "numeric") ? khab::InverseMode::numeric_only
                                 : khab::InverseMode::analytic_if_possible;
  if (n.n() + 2 > 8)
    log_warn("order n+2 = " + std::to_string(n.n() + 2) +
             " differentiation is strongly noise-amplifying");

  std::string csv = "t,q_hat,noise_estimate\n";
  for (double t : grid) {
    double value = 0.0, noise = 0.0;
    if (spec.mix && cfg.mode == khab::InverseMode::analytic_if_possible) {
      value = khab::inverse_transform(*spec.mix, t, n, cfg);
    } else if (spec.mix) {
      const khab::InverseResult r = khab::inverse_transform_numeric(spec.mix->evaluator(), t, n, cfg);
      value = r.value;
      noise = r.noise_estimate;
    } else {
      const khab::InverseResult r = khab::inverse_transform_sampled(*spec.sampled, t, n, cfg);
      value = r.value;
      noise = r.noise_estimate;
    }
    csv += khab::format_double(t) + "," + khab::format_double(value) + "," +
           khab::format_double(noise) + "\n";
  }
  khab::write_file_atomic(out_path, csv);
  log_info("inverse over " + std::to_string(grid.size()) + " points -> " + out_path);
  return kExitOk;
}

int cmd_check(const std::string& q_spec, double alpha, int n_arg, const std::string& grid_spec,
              const std::string& out_path, double q_scale, const khab::QuadratureConfig& cfg,
              const khab::ConjectureTolerances& tols) {
  const khab::ConjectureParams params{alpha, n_arg};
  params.validate();
  const std::vector<double> grid = khab::parse_grid_spec(grid_spec);

  khab::ConjectureReport report;
  if (q_spec == "extremal") {
    const khab::PowerLawMix q = khab::extremal_q(params).scaled(q_scale);
    report = khab::check(q, params, grid, cfg, tols);
    report.family_id = "extremal";
  } else {
    const FunctionSpec spec = load_function_spec(q_spec);
    if (spec.mix) {
      report = khab::check(spec.mix->scaled(q_scale), params, grid, cfg, tols);
    } else {
      report = khab::check(spec.evaluator(true), params, grid, cfg, tols);
    }
  }
  khab::write_file_atomic(out_path, khab::report_to_json(report));
  log_info("verdict: " + khab::to_string(report.verdict) + ", ratio = " +
           khab::format_double(report.ratio));
  if (report.verdict == khab::Verdict::inconclusive) return kExitDivergence;
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_path) {
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(khab::read_file(config_path));
  } catch (const nlohmann::json::exception& e) {
    throw khab::ConfigError(std::string("sweep config: ") + e.what());
  }
  if (!config.contains("alphas") || !config.contains("ns"))
    throw khab::ConfigError("sweep config: 'alphas' and 'ns' are required");

  std::vector<double> alphas;
  for (const auto& a : config["alphas"]) alphas.push_back(a.get<double>());
  std::vector<int> ns;
  for (const auto& n : config["ns"]) ns.push_back(n.get<int>());

  khab::QuadratureConfig cfg;
  if (config.contains("tol_rel")) cfg.rel_tol = config["tol_rel"].get<double>();
  if (config.contains("tol_abs")) cfg.abs_tol = config["tol_abs"].get<double>();
  khab::ConjectureTolerances tols;
  if (config.contains("tol_premise")) tols.tol_premise = config["tol_premise"].get<double>();
  if (config.contains("tol_ratio")) tols.tol_ratio = config["tol_ratio"].get<double>();
  const std::string grid_spec =
      config.contains("grid") ? config["grid"].get<std::string>() : "log:1e-2:1e2:200";
  const std::vector<double> grid = khab::parse_grid_spec(grid_spec);

  khab::ConjectureFamily family;
  if (!config.contains("family") || config["family"] == "extremal") {
    family = khab::extremal_family();
  } else if (config["family"].is_object()) {
    const khab::PowerLawMix mix = khab::mix_from_json_string(config["family"].dump());
    family = {"fixed", [mix](const khab::ConjectureParams&) {
                return std::vector<khab::PowerLawMix>{mix};
              }};
  } else {
    throw khab::ConfigError("sweep config: 'family' must be \"extremal\" or a mix object");
  }

  const std::vector<khab::ConjectureReport> reports =
      khab::sweep(alphas, ns, family, grid, cfg, tols);
  khab::write_file_atomic(out_path, khab::sweep_summary_csv(reports));
  log_info(std::to_string(reports.size()) + " sweep rows -> " + out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"khab: direct/inverse conversion transforms and inequality checks for "
               "Khabibullin's conjecture"};
  app.require_subcommand(1);

  int n = 1;
  double alpha = 0.5;
  double q_scale = 1.0;
  std::string grid_spec = "log:1e-2:1e2:200";
  std::string out_path;
  std::string q_path, g_path, config_path;
  std::string mode = "analytic";
  khab::QuadratureConfig quad;
  khab::ConjectureTolerances tols;

  CLI::App* kernel = app.add_subcommand("kernel", "Tabulate A_n and dA_n/dx over an x grid");
  kernel->add_option("--n", n, "kernel order")->required();
  kernel->add_option("--grid", grid_spec, "x grid: log:a:b:count, lin:a:b:count or x1,x2,...")
      ->required();
  kernel->add_option("--out", out_path, "output CSV path")->required();

  CLI::App* transform = app.add_subcommand("transform", "Direct conversion q -> g over a t grid");
  transform->add_option("--q", q_path, "q spec: PowerLawMix .json or samples .csv")->required();
  transform->add_option("--n", n, "kernel order")->required();
  transform->add_option("--grid", grid_spec, "t grid spec")->required();
  transform->add_option("--out", out_path, "output CSV path")->required();
  transform->add_option("--tol-rel", quad.rel_tol, "quadrature relative tolerance");
  transform->add_option("--tol-abs", quad.abs_tol, "quadrature absolute tolerance");

  CLI::App* invert = app.add_subcommand("invert", "Inverse conversion g -> q over a t grid");
  invert->add_option("--g", g_path, "g spec: PowerLawMix .json or samples .csv")->required();
  invert->add_option("--n", n, "kernel order")->required();
  invert->add_option("--grid", grid_spec, "t grid spec")->required();
  invert->add_option("--out", out_path, "output CSV path")->required();
  invert->add_option("--mode", mode, "analytic | numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));

  CLI::App* check = app.add_subcommand("check", "Verify the inequality pair for one (alpha, n)");
  check->add_option("--q", q_path, "q spec path or 'extremal'")->required();
  check->add_option("--alpha", alpha, "alpha > 0")->required();
  check->add_option("--n", n, "conjecture n >= 1")->required();
  check->add_option("--grid", grid_spec, "premise t grid spec");
  check->add_option("--out", out_path, "output JSON report path")->required();
  check->add_option("--q-scale", q_scale, "scale factor applied to q");
  check->add_option("--tol-rel", quad.rel_tol, "quadrature relative tolerance");
  check->add_option("--tol-abs", quad.abs_tol, "quadrature absolute tolerance");
  check->add_option("--tol-premise", tols.tol_premise, "premise slack relative to t^alpha");
  check->add_option("--tol-ratio", tols.tol_ratio, "allowed conclusion/bound overshoot");

  CLI::App* sweep = app.add_subcommand("sweep", "Batch checks from a JSON config");
  sweep->add_option("--config", config_path, "JSON config path")->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadArgs;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(n, grid_spec, out_path);
    if (transform->parsed()) return cmd_transform(q_path, n, grid_spec, out_path, quad);
    if (invert->parsed()) return cmd_invert(g_path, n, grid_spec, out_path, mode);
    if (check->parsed())
      return cmd_check(q_path, alpha, n, grid_spec, out_path, q_scale, quad, tols);
    if (sweep->parsed()) return cmd_sweep(config_path, out_path);
  } catch (const khab::ConditioningError& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitConditioning;
  } catch (const khab::EvaluationError& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitDivergence;
  } catch (const khab::DomainError& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitBadArgs;
  } catch (const khab::ConfigError& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitBadArgs;
  } catch (const khab::RangeError& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitBadArgs;
  } catch (const std::exception& e) {
    log_msg(LogLevel::error, "error", e.what());
    return kExitIo;
  }
  return kExitOk;
}
