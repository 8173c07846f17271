#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace symkit::io {

/// Shortest decimal that reads back to the same double, capped at 12
/// significant digits. Non-finite values become "inf", "-inf" and "nan".
std::string format_number(double v);

/// Pretty JSON with fixed key order and format_number() for every float.
/// Non-finite floats are emitted as the strings "inf", "-inf", "nan".
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);

/// Header row plus one line per row, numbers through format_number().
std::string write_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Writes text to path (parent directories created); throws std::runtime_error.
void write_file(const std::string& path, const std::string& text);

}  // namespace symkit::io
