#include "khab/grid.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "khab/errors.hpp"

namespace khab {

namespace {

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("grid spec: cannot parse number '" + s + "'");
  return v;
}

long parse_count(const std::string& s) {
  long v = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("grid spec: cannot parse count '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::vector<double> make_log_grid(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("make_log_grid: count must be >= 1");
  if (!(lo > 0.0) || !(hi >= lo)) throw ConfigError("make_log_grid: need 0 < lo <= hi");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> make_lin_grid(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("make_lin_grid: count must be >= 1");
  if (!(hi >= lo)) throw ConfigError("make_lin_grid: need lo <= hi");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  for (int i = 0; i < count; ++i)
    g[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  g.front() = lo;
  g.back() = hi;
  return g;
}

void require_increasing_positive(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw ConfigError(std::string(what) + ": grid is empty");
  double prev = 0.0;
  for (double v : grid) {
    if (!(v > prev))
      throw ConfigError(std::string(what) + ": grid must be strictly increasing and positive");
    prev = v;
  }
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<double> grid;
  if (spec.rfind("log:", 0) == 0 || spec.rfind("lin:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 4) throw ConfigError("grid spec: expected <kind>:<min>:<max>:<count>");
    const double lo = parse_double(parts[1]);
    const double hi = parse_double(parts[2]);
    const long count = parse_count(parts[3]);
    if (count < 1 || count > 10000000) throw ConfigError("grid spec: bad count");
    grid = (parts[0] == "log") ? make_log_grid(lo, hi, static_cast<int>(count))
                               : make_lin_grid(lo, hi, static_cast<int>(count));
  } else {
    if (spec.empty()) throw ConfigError("grid spec: empty");
    for (const auto& tok : split(spec, ',')) grid.push_back(parse_double(tok));
  }
  require_increasing_positive(grid, "grid spec");
  return grid;
}

}  // namespace khab
