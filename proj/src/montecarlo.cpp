#include "zsl/montecarlo.hpp"

#include <cmath>
#include <regex>

#include <json.hpp>

#include "zsl/erdos_renyi.hpp"
#include "zsl/error.hpp"
#include "zsl/rng.hpp"

namespace zsl {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}

double parse_number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(v))
    throw Error(Errc::InvalidDescriptor, "cannot parse rho rule '" + whole + "'");
  return v;
}

}  // namespace

RhoRule RhoRule::parse(const std::string& text) {
  static const std::regex shape(R"(^(?:([^*]+)\*)?(logm/m|logm/\(8\*m\^2\)|1?/m\^2)$)");
  static const std::regex over_m2(R"(^([^*/]+)/m\^2$)");
  RhoRule r;
  r.text_ = strip_spaces(text);
  if (r.text_.empty()) throw Error(Errc::InvalidDescriptor, "empty rho rule");
  std::smatch match;
  if (std::regex_match(r.text_, match, shape)) {
    r.c_ = match[1].matched ? parse_number(match[1].str(), text) : 1.0;
    const std::string tail = match[2].str();
    if (tail == "logm/m") r.form_ = Form::LogOverM;
    else if (tail == "logm/(8*m^2)") r.form_ = Form::LogOver8M2;
    else r.form_ = Form::OverM2;
  } else if (std::regex_match(r.text_, match, over_m2)) {
    r.c_ = parse_number(match[1].str(), text);
    r.form_ = Form::OverM2;
  } else {
    r.form_ = Form::Absolute;
    r.c_ = parse_number(r.text_, text);
  }
  if (r.c_ < 0.0) throw Error(Errc::InvalidDescriptor, "rho rule coefficient must be nonnegative");
  if (r.form_ == Form::Absolute && r.c_ > 1.0)
    throw Error(Errc::InvalidDescriptor, "absolute rho must lie in [0, 1]");
  return r;
}

double RhoRule::operator()(std::size_t m) const {
  const double md = static_cast<double>(m);
  switch (form_) {
    case Form::Absolute: return c_;
    case Form::LogOverM: return c_ * std::log(md) / md;
    case Form::LogOver8M2: return c_ * std::log(md) / (8.0 * md * md);
    case Form::OverM2: return c_ / (md * md);
  }
  return c_;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, std::size_t trial) {
  return hash_seed({master, static_cast<std::uint64_t>(grid_index), static_cast<std::uint64_t>(trial)});
}

void validate_descriptor(const ExperimentDescriptor& d) {
  if (d.kind != "er_gap" && d.kind != "er_degree")
    throw Error(Errc::InvalidDescriptor, "unknown trial kind '" + d.kind + "'");
  if (d.m_values.empty() || d.rho_rules.empty())
    throw Error(Errc::InvalidDescriptor, "parameter grid is empty");
  for (std::size_t m : d.m_values)
    if (m < 2) throw Error(Errc::InvalidDescriptor, "m must be at least 2");
  if (d.trials < 1) throw Error(Errc::InvalidDescriptor, "trials must be positive");
  for (const auto& rule : d.rho_rules) RhoRule::parse(rule);
}

std::vector<ErTrialRow> run_er_experiment(const ExperimentDescriptor& d) {
  validate_descriptor(d);
  struct Task {
    std::size_t m;
    double rho;
    std::size_t grid;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  std::size_t grid = 0;
  for (std::size_t m : d.m_values) {
    for (const auto& text : d.rho_rules) {
      const double rho = RhoRule::parse(text)(m);
      if (!(rho >= 0.0 && rho <= 1.0))
        throw Error(Errc::InvalidDescriptor, "rule '" + text + "' gives rho outside [0, 1] at m=" +
                                                 std::to_string(m));
      for (int t = 0; t < d.trials; ++t) tasks.push_back({m, rho, grid, static_cast<std::size_t>(t)});
      ++grid;
    }
  }
  const bool want_gap = d.kind == "er_gap";
  std::function<ErTrialRow(std::size_t)> fn = [&](std::size_t i) {
    const Task& task = tasks[i];
    ErTrialRow row;
    row.kind = d.kind;
    row.m = task.m;
    row.rho = task.rho;
    row.master_seed = d.master_seed;
    row.grid = task.grid;
    row.trial = task.trial;
    row.seed = trial_seed(d.master_seed, task.grid, task.trial);
    const WeightedGraph g = sample_er({task.m, task.rho, row.seed});
    const auto& deg = g.degrees();
    row.min_deg = *std::min_element(deg.begin(), deg.end());
    row.max_deg = *std::max_element(deg.begin(), deg.end());
    if (task.rho > 0.0 && g.total_weight() > 0.0) {
      const auto stats = degree_stats(g, task.rho);
      row.l1_dev_expected = stats.l1_dev_expected;
      row.l1_dev_mean = stats.l1_dev_mean;
    }
    if (want_gap) {
      const auto t = er_gap_trial(g, task.rho);
      row.connected = t.connected;
      row.gap = t.gap;
      row.scaled_gap = t.scaled_gap;
    }
    return row;
  };
  return run_indexed<ErTrialRow>(tasks.size(), d.workers, fn);
}

const std::vector<std::string>& er_csv_columns() {
  static const std::vector<std::string> cols = {
      "kind",    "m",         "rho",        "trial",   "seed",
      "connected", "gap",     "scaled_gap", "min_deg", "max_deg",
      "l1_dev_expected", "l1_dev_mean", "master_seed", "grid"};
  return cols;
}

void write_er_csv(std::ostream& out, const std::vector<ErTrialRow>& rows, const ConfigEcho& config) {
  write_config_echo(out, config);
  write_csv_row(out, er_csv_columns());
  for (const auto& r : rows) {
    write_csv_row(out, {r.kind, std::to_string(r.m), format_double(r.rho), std::to_string(r.trial),
                        std::to_string(r.seed),
                        r.connected ? (*r.connected ? "1" : "0") : "",
                        format_optional(r.gap), format_optional(r.scaled_gap),
                        format_double(r.min_deg), format_double(r.max_deg),
                        format_optional(r.l1_dev_expected), format_optional(r.l1_dev_mean),
                        std::to_string(r.master_seed), std::to_string(r.grid)});
  }
}

void write_er_json(std::ostream& out, const std::vector<ErTrialRow>& rows, const ConfigEcho& config) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  auto opt = [](const std::optional<double>& x) {
    return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["kind"] = r.kind;
    j["m"] = r.m;
    j["rho"] = r.rho;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["connected"] = r.connected ? nlohmann::ordered_json(*r.connected) : nlohmann::ordered_json(nullptr);
    j["gap"] = opt(r.gap);
    j["scaled_gap"] = opt(r.scaled_gap);
    j["min_deg"] = r.min_deg;
    j["max_deg"] = r.max_deg;
    j["l1_dev_expected"] = opt(r.l1_dev_expected);
    j["l1_dev_mean"] = opt(r.l1_dev_mean);
    j["master_seed"] = r.master_seed;
    j["grid"] = r.grid;
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace zsl
