#pragma once

#include <string>

namespace khab {

/// Locale-independent formatting at 17 significant digits, so identical
/// inputs always serialize to identical bytes.
std::string format_double(double v);

double parse_double_strict(const std::string& s);

std::string read_file(const std::string& path);

/// Write via temp file + rename so readers never observe partial output.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace khab
