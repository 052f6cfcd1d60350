#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace zsl {

// Shortest decimal string that reads back to the same double.
std::string format_double(double x);
std::string format_optional(const std::optional<double>& x);

// Resolved configuration echoed as "# key=value" lines above a CSV header.
using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

void write_config_echo(std::ostream& out, const ConfigEcho& config);

// Joins cells with commas; cells containing commas or quotes are quoted.
void write_csv_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace zsl
