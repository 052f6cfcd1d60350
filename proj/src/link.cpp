#include "zsl/link.hpp"

#include <cmath>

#include <json.hpp>

#include "zsl/error.hpp"
#include "zsl/montecarlo.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

LinkGraph build_link(const Presentation& pres) {
  std::array<std::vector<WeightEntry>, 3> entries;
  for (auto& e : entries) e.reserve(pres.relators.size());
  for (const auto& r : pres.relators) {
    if (!is_cyclically_reduced(r)) throw Error(Errc::BadParameter, "relator is not cyclically reduced");
    entries[0].push_back({r.x.code, r.y.inv().code, 1.0});
    entries[1].push_back({r.y.code, r.z.inv().code, 1.0});
    entries[2].push_back({r.z.code, r.x.inv().code, 1.0});
  }
  const std::size_t n = 2 * static_cast<std::size_t>(pres.m);
  LinkGraph link;
  std::vector<WeightEntry> all;
  all.reserve(3 * pres.relators.size());
  for (int i = 0; i < 3; ++i) {
    link.parts[i] = build_graph(n, entries[i]);
    all.insert(all.end(), entries[i].begin(), entries[i].end());
  }
  link.base = build_graph(n, all);
  return link;
}

namespace {

double part_gap(const WeightedGraph& g) {
  if (g.isolated_count() == g.vertex_count()) return 1.0;
  return restricted_norm(g);
}

}  // namespace

LinkReport link_spectral_report(const LinkGraph& link, std::size_t n_relators) {
  if (n_relators == 0 || link.base.total_weight() <= 0.0)
    throw Error(Errc::EmptyLink, "presentation has no relators");
  LinkReport r;
  r.n_relators = n_relators;
  const auto base = spectral_report(link.base);
  r.gap = base.restricted_norm;
  r.connected = base.connected;
  r.isolated = base.isolated_removed;
  for (int i = 0; i < 3; ++i) r.part_gaps[i] = part_gap(link.parts[i]);
  r.delta = degree_irregularity({&link.parts[0], &link.parts[1], &link.parts[2]});
  return r;
}

LinkReport link_spectral_report(const Presentation& pres) {
  if (pres.relators.empty()) throw Error(Errc::EmptyLink, "presentation has no relators");
  return link_spectral_report(build_link(pres), pres.relators.size());
}

double rho_prime(std::uint32_t m, double rho) {
  return 1.0 - std::pow(1.0 - rho, 4.0 * m - 2.0);
}

bool finiteness_regime_flag(std::uint32_t m, double rho) {
  return rho >= std::pow(static_cast<double>(m), -1.42);
}

Presentation sample_presentation(ModelKind model, std::uint32_t m, double param, std::uint64_t seed) {
  switch (model) {
    case ModelKind::Density: return sample_density_model(m, param, seed);
    case ModelKind::Uniform: return sample_uniform_model(m, static_cast<std::uint64_t>(param), seed);
    case ModelKind::Binomial: return sample_binomial_model(m, param, seed);
    case ModelKind::Explicit: break;
  }
  throw Error(Errc::InvalidDescriptor, "explicit presentations cannot be sampled");
}

double resolve_model_param(ModelKind model, const std::string& text, std::uint32_t m) {
  if (model == ModelKind::Binomial) {
    const double rho = RhoRule::parse(text)(m);
    if (!(rho >= 0.0 && rho <= 1.0))
      throw Error(Errc::InvalidDescriptor, "rule '" + text + "' gives rho outside [0, 1]");
    return rho;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw Error(Errc::InvalidDescriptor, "bad model parameter '" + text + "'");
  if (model == ModelKind::Density && !(v > 0.0 && v < 1.0))
    throw Error(Errc::InvalidDescriptor, "density must lie in (0, 1)");
  if (model == ModelKind::Uniform && (v < 0.0 || v != std::floor(v)))
    throw Error(Errc::InvalidDescriptor, "relator count must be a nonnegative integer");
  return v;
}

std::vector<LinkTrialRow> run_link_experiment(const LinkExperiment& e) {
  if (e.model == ModelKind::Explicit) throw Error(Errc::InvalidDescriptor, "model must be sampled");
  if (e.m_values.empty() || e.params.empty())
    throw Error(Errc::InvalidDescriptor, "parameter grid is empty");
  if (e.trials < 1) throw Error(Errc::InvalidDescriptor, "trials must be positive");
  struct Task {
    std::uint32_t m;
    double param;
    std::size_t grid;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  std::size_t grid = 0;
  for (std::uint32_t m : e.m_values) {
    if (m == 0) throw Error(Errc::InvalidDescriptor, "m must be at least 1");
    for (const auto& text : e.params) {
      const double param = resolve_model_param(e.model, text, m);
      for (int t = 0; t < e.trials; ++t) tasks.push_back({m, param, grid, static_cast<std::size_t>(t)});
      ++grid;
    }
  }
  std::function<LinkTrialRow(std::size_t)> fn = [&](std::size_t i) {
    const Task& task = tasks[i];
    LinkTrialRow row;
    row.m = task.m;
    row.param = task.param;
    row.trial = task.trial;
    row.grid = task.grid;
    row.master_seed = e.master_seed;
    row.seed = trial_seed(e.master_seed, task.grid, task.trial);
    const Presentation p = sample_presentation(e.model, task.m, task.param, row.seed);
    row.model = p.model.to_string();
    if (p.relators.empty()) {
      row.report = LinkReport{};
      row.report.isolated = 2 * static_cast<std::size_t>(task.m);
    } else {
      row.report = link_spectral_report(p);
    }
    if (e.model == ModelKind::Binomial) row.finite_regime = finiteness_regime_flag(task.m, task.param);
    return row;
  };
  return run_indexed<LinkTrialRow>(tasks.size(), e.workers, fn);
}

const std::vector<std::string>& link_csv_columns() {
  static const std::vector<std::string> cols = {
      "m",         "model",     "param",     "trial", "seed",  "n_relators",    "gap",
      "connected", "isolated",  "part1_gap", "part2_gap", "part3_gap", "delta",
      "finite_regime", "master_seed", "grid"};
  return cols;
}

void write_link_csv(std::ostream& out, const std::vector<LinkTrialRow>& rows, const ConfigEcho& config) {
  write_config_echo(out, config);
  write_csv_row(out, link_csv_columns());
  for (const auto& r : rows) {
    const auto& rep = r.report;
    write_csv_row(out, {std::to_string(r.m), r.model, format_double(r.param), std::to_string(r.trial),
                        std::to_string(r.seed), std::to_string(rep.n_relators), format_double(rep.gap),
                        rep.connected ? "1" : "0", std::to_string(rep.isolated),
                        format_double(rep.part_gaps[0]), format_double(rep.part_gaps[1]),
                        format_double(rep.part_gaps[2]), format_double(rep.delta),
                        r.finite_regime ? "1" : "0", std::to_string(r.master_seed),
                        std::to_string(r.grid)});
  }
}

void write_link_json(std::ostream& out, const std::vector<LinkTrialRow>& rows, const ConfigEcho& config) {
  nlohmann::ordered_json doc;
  doc["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) doc["config"][k] = v;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    const auto& rep = r.report;
    nlohmann::ordered_json j;
    j["m"] = r.m;
    j["model"] = r.model;
    j["param"] = r.param;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["n_relators"] = rep.n_relators;
    j["gap"] = rep.gap;
    j["connected"] = rep.connected;
    j["isolated"] = rep.isolated;
    j["part1_gap"] = rep.part_gaps[0];
    j["part2_gap"] = rep.part_gaps[1];
    j["part3_gap"] = rep.part_gaps[2];
    j["delta"] = rep.delta;
    j["finite_regime"] = r.finite_regime;
    j["master_seed"] = r.master_seed;
    j["grid"] = r.grid;
    doc["rows"].push_back(std::move(j));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace zsl
