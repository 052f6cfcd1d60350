#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>

#include "zsl/error.hpp"

namespace zsl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  return std::all_of(k.begin(), k.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
  });
}

}  // namespace

ExperimentConfig config_parse(std::istream& in, const std::string& source) {
  ExperimentConfig cfg;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw Error(Errc::ParseError, where + "expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (!valid_key(key)) throw Error(Errc::ParseError, where + "bad key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key == "command") {
      cfg.command = value;
      continue;
    }
    if (key == "config") throw Error(Errc::ParseError, where + "config files cannot nest");
    cfg.entries.push_back({key, value, lineno});
  }
  return cfg;
}

ExperimentConfig config_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open config file " + path);
  return config_parse(in, path);
}

std::vector<std::string> merge_config(const std::vector<std::string>& args, const ExperimentConfig& config) {
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };
  std::vector<std::string> out = args;
  for (const auto& e : config.entries) {
    if (given(e.key)) continue;
    if (e.value == "false") continue;
    out.push_back(e.value == "true" ? "--" + e.key : "--" + e.key + "=" + e.value);
  }
  return out;
}

}  // namespace zsl::cli
