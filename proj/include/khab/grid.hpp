#pragma once

#include <string>
#include <vector>

namespace khab {

/// count points, log-uniform on [lo, hi], lo > 0. count == 1 gives {lo}.
std::vector<double> make_log_grid(double lo, double hi, int count);

/// count points, uniform on [lo, hi].
std::vector<double> make_lin_grid(double lo, double hi, int count);

/// Parse "log:<min>:<max>:<count>", "lin:<min>:<max>:<count>" or a bare
/// comma-separated list of values. Throws ConfigError on malformed specs
/// or grids that are not strictly increasing and positive.
std::vector<double> parse_grid_spec(const std::string& spec);

void require_increasing_positive(const std::vector<double>& grid, const char* what);

}  // namespace khab
