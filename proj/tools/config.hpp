#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace zsl::cli {

struct ConfigEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

// Resolved contents of a key=value configuration file.
struct ExperimentConfig {
  std::optional<std::string> command;
  std::vector<ConfigEntry> entries;  // every key except "command", in file order
};

// Lines are "key = value"; blank lines and '#' comments are skipped.
// Throws ParseError naming the offending line, IoError.
ExperimentConfig config_parse(std::istream& in, const std::string& source = "<config>");
ExperimentConfig config_load(const std::string& path);

// Appends "--key=value" for every entry whose flag is absent from `args`,
// so flags given on the command line win. "true" becomes a bare flag and
// "false" drops the entry.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const ExperimentConfig& config);

}  // namespace zsl::cli
