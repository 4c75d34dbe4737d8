#include "khab/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "khab/errors.hpp"
#include "khab/io.hpp"
#include "khab/special_functions.hpp"

namespace khab {

PowerLawMix::PowerLawMix(std::vector<PowerTerm> terms) : terms_(std::move(terms)) {
  for (const PowerTerm& term : terms_) {
    if (!(term.beta > -1.0))
      throw DomainError("PowerLawMix: every exponent must satisfy beta > -1");
    if (!std::isfinite(term.c) || !std::isfinite(term.beta))
      throw DomainError("PowerLawMix: non-finite term");
  }
}

double PowerLawMix::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("PowerLawMix: t must be positive");
  double sum = 0.0;
  for (const PowerTerm& term : terms_) sum += term.c * std::pow(t, term.beta);
  return sum;
}

bool PowerLawMix::nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const PowerTerm& term) { return term.c >= 0.0; });
}

PowerLawMix PowerLawMix::scaled(double factor) const {
  std::vector<PowerTerm> out = terms_;
  for (PowerTerm& term : out) term.c *= factor;
  return PowerLawMix(std::move(out));
}

PowerLawMix PowerLawMix::differentiated() const {
  std::vector<PowerTerm> out;
  for (const PowerTerm& term : terms_) {
    const double c = term.c * term.beta;
    if (c != 0.0) out.push_back({c, term.beta - 1.0});
  }
  return PowerLawMix(std::move(out));
}

PowerLawMix PowerLawMix::multiplied_by_power(double power) const {
  std::vector<PowerTerm> out = terms_;
  for (PowerTerm& term : out) term.beta += power;
  return PowerLawMix(std::move(out));
}

RealFunction PowerLawMix::evaluator() const {
  return [mix = *this](double t) { return mix(t); };
}

SampledFunction::SampledFunction(std::vector<double> grid, std::vector<double> values,
                                 Interpolation interpolation)
    : grid_(std::move(grid)), values_(std::move(values)), interpolation_(interpolation) {
  if (grid_.size() != values_.size())
    throw ConfigError("SampledFunction: grid and values must have equal length");
  const std::size_t min_points = interpolation_ == Interpolation::cubic ? 4 : 2;
  if (grid_.size() < min_points)
    throw ConfigError("SampledFunction: too few points for the interpolation rule");
  double prev = 0.0;
  for (double g : grid_) {
    if (!(g > prev))
      throw ConfigError("SampledFunction: grid must be strictly increasing and positive");
    prev = g;
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ConfigError("SampledFunction: non-finite value");
  }

  if (interpolation_ == Interpolation::cubic) {
    // natural cubic spline moments by the standard tridiagonal sweep
    const std::size_t n = grid_.size();
    second_derivs_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double sig = (grid_[i] - grid_[i - 1]) / (grid_[i + 1] - grid_[i - 1]);
      const double p = sig * second_derivs_[i - 1] + 2.0;
      second_derivs_[i] = (sig - 1.0) / p;
      const double slope_hi = (values_[i + 1] - values_[i]) / (grid_[i + 1] - grid_[i]);
      const double slope_lo = (values_[i] - values_[i - 1]) / (grid_[i] - grid_[i - 1]);
      u[i] = (6.0 * (slope_hi - slope_lo) / (grid_[i + 1] - grid_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t k = n - 1; k-- > 0;)
      second_derivs_[k] = second_derivs_[k] * second_derivs_[k + 1] + u[k];
  }
}

double SampledFunction::operator()(double t) const {
  if (t < grid_.front() || t > grid_.back())
    throw RangeError("SampledFunction: argument outside the sampled range");
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  if (hi == grid_.size()) --hi;
  if (hi == 0) ++hi;
  const std::size_t lo = hi - 1;
  const double h = grid_[hi] - grid_[lo];
  const double a = (grid_[hi] - t) / h;
  const double b = (t - grid_[lo]) / h;
  if (interpolation_ == Interpolation::linear)
    return a * values_[lo] + b * values_[hi];
  return a * values_[lo] + b * values_[hi] +
         ((a * a * a - a) * second_derivs_[lo] + (b * b * b - b) * second_derivs_[hi]) *
             (h * h) / 6.0;
}

RealFunction SampledFunction::evaluator() const {
  return [f = *this](double t) { return f(t); };
}

TransformConstant transform_constant(KernelOrder n, double beta) {
  if (!(beta > -1.0)) throw DomainError("transform_constant: need beta > -1");
  // C(n, beta) = B(beta+1, n+1) / (beta+1) = n! / ((beta+1) prod_{j=1..n+1} (beta+j))
  double denom = beta + 1.0;
  for (int j = 1; j <= n.n() + 1; ++j) denom *= beta + static_cast<double>(j);
  return {n.n(), beta, factorial(n.n()) / denom};
}

PowerLawMix closed_form_transform(const PowerLawMix& q, KernelOrder n) {
  std::vector<PowerTerm> out;
  out.reserve(q.terms().size());
  for (const PowerTerm& term : q.terms())
    out.push_back({term.c * transform_constant(n, term.beta).value, term.beta + 1.0});
  return PowerLawMix(std::move(out));
}

PowerLawMix closed_form_inverse(const PowerLawMix& g, KernelOrder n) {
  std::vector<PowerTerm> out;
  out.reserve(g.terms().size());
  for (const PowerTerm& term : g.terms()) {
    const double gamma = term.beta;
    if (!(gamma > 0.0))
      throw DomainError("closed_form_inverse: every exponent of g must be positive");
    // gamma^2 (gamma+1) ... (gamma+n) / n!
    double mult = gamma * gamma;
    for (int j = 1; j <= n.n(); ++j) mult *= gamma + static_cast<double>(j);
    out.push_back({term.c * mult / factorial(n.n()), gamma - 1.0});
  }
  return PowerLawMix(std::move(out));
}

// --- serialization ---

std::string to_json_string(const PowerLawMix& mix) {
  nlohmann::json terms = nlohmann::json::array();
  for (const PowerTerm& term : mix.terms()) terms.push_back({{"c", term.c}, {"beta", term.beta}});
  return nlohmann::json{{"terms", terms}}.dump(2) + "\n";
}

PowerLawMix mix_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("PowerLawMix JSON: ") + e.what());
  }
  if (!j.contains("terms") || !j["terms"].is_array())
    throw ConfigError("PowerLawMix JSON: missing 'terms' array");
  std::vector<PowerTerm> terms;
  for (const auto& item : j["terms"]) {
    if (!item.contains("c") || !item.contains("beta"))
      throw ConfigError("PowerLawMix JSON: each term needs 'c' and 'beta'");
    terms.push_back({item["c"].get<double>(), item["beta"].get<double>()});
  }
  return PowerLawMix(std::move(terms));
}

void save_mix_json(const PowerLawMix& mix, const std::string& path) {
  write_file_atomic(path, to_json_string(mix));
}

PowerLawMix load_mix_json(const std::string& path) {
  return mix_from_json_string(read_file(path));
}

std::string to_csv_string(const SampledFunction& f) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < f.grid().size(); ++i)
    out += format_double(f.grid()[i]) + "," + format_double(f.values()[i]) + "\n";
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

SampledFunction sampled_from_csv_string(const std::string& text, Interpolation interpolation) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("sampled CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv_line(line);
  if (header.empty() || header[0] != "t")
    throw ConfigError("sampled CSV: first column must be 't'");
  std::size_t value_col = 1;
  for (std::size_t i = 1; i < header.size(); ++i) {
    if (header[i] == "value" || header[i] == "g") {
      value_col = i;
      break;
    }
  }
  if (header.size() < 2) throw ConfigError("sampled CSV: need at least two columns");

  std::vector<double> grid, values;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() <= value_col)
      throw ConfigError("sampled CSV: row with too few columns");
    grid.push_back(parse_double_strict(fields[0]));
    values.push_back(parse_double_strict(fields[value_col]));
  }
  return SampledFunction(std::move(grid), std::move(values), interpolation);
}

void save_sampled_csv(const SampledFunction& f, const std::string& path) {
  write_file_atomic(path, to_csv_string(f));
}

SampledFunction load_sampled_csv(const std::string& path, Interpolation interpolation) {
  return sampled_from_csv_string(read_file(path), interpolation);
}

}  // namespace khab
