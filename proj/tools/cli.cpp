#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <memory>
#include <sstream>

#include "config.hpp"
#include "zsl/certify.hpp"
#include "zsl/complex.hpp"
#include "zsl/csv.hpp"
#include "zsl/error.hpp"
#include "zsl/fixed_point.hpp"
#include "zsl/link.hpp"
#include "zsl/montecarlo.hpp"
#include "zsl/p_laplacian.hpp"
#include "zsl/poincare.hpp"
#include "zsl/presentation.hpp"
#include "zsl/rng.hpp"
#include "zsl/spectral.hpp"

namespace zsl::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Common {
  std::uint64_t seed = 0;
  int workers = 1;
  std::string format = "csv";
  std::string out_path;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
  c.seed_opt = sub->add_option("--seed", c.seed, "Master seed (falls back to ZSL_SEED)");
  sub->add_option("--workers", c.workers, "Worker threads; never changes the output")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out_path, "Output file (default: standard output)");
}

void resolve_seed(Common& c) {
  if (c.seed_opt->count() > 0) return;
  const char* env = std::getenv("ZSL_SEED");
  if (env == nullptr || *env == '\0') return;
  const std::string s(env);
  std::size_t used = 0;
  try {
    c.seed = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s[0] == '-')
    throw Error(Errc::UsageError, "ZSL_SEED must be an unsigned integer, got '" + s + "'");
}

// Destination for the data; the summary line goes to whichever stream the
// data does not use.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out, std::ostream& err) : out_(&out), summary_(&err) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(Errc::IoError, "cannot write " + path);
      out_ = file_.get();
      summary_ = &out;
    }
  }
  std::ostream& data() { return *out_; }
  std::ostream& summary() { return *summary_; }
  void finish() {
    out_->flush();
    if (file_ && !*file_) throw Error(Errc::IoError, "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* out_;
  std::ostream* summary_;
};

template <class T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) ss << ',';
    if constexpr (std::is_same_v<T, double>) ss << format_double(xs[i]);
    else ss << xs[i];
  }
  return ss.str();
}

double median(std::vector<double> xs) {
  if (xs.empty()) return std::nan("");
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

ModelKind parse_model(const std::string& s) {
  if (s == "density") return ModelKind::Density;
  if (s == "uniform") return ModelKind::Uniform;
  if (s == "binomial") return ModelKind::Binomial;
  throw Error(Errc::UsageError, "unknown model '" + s + "'");
}

std::size_t parse_size(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || s[0] == '-') throw Error(Errc::UsageError, "bad " + what + " '" + s + "'");
  return static_cast<std::size_t>(v);
}

void write_echo_json(Json& doc, const ConfigEcho& echo) {
  doc["config"] = Json::object();
  for (const auto& [k, v] : echo) doc["config"][k] = v;
}

// Graph chosen by --graph (file) or --named.
struct GraphChoice {
  std::string file;
  std::string named;

  void add(CLI::App* sub) {
    sub->add_option("--graph", file, "Graph file ('n <count>' then 's t w' lines)");
    sub->add_option("--named", named, "complete:N, bipartite:A,B, cycle:N, path:N or star:K");
  }
  std::pair<WeightedGraph, std::string> load() const {
    if (file.empty() == named.empty())
      throw Error(Errc::UsageError, "give exactly one of --graph and --named");
    if (!file.empty()) return {read_graph_file(file), file};
    return {named_graph(named), named};
  }
};

// ---------------------------------------------------------------- er-stats

struct ErStatsArgs {
  Common common;
  std::vector<std::size_t> m;
  std::vector<std::string> rho;
  std::vector<std::string> rho_rule;
  int trials = 1;
  std::string kind = "er_gap";
};

void setup_er_stats(CLI::App& app, ErStatsArgs& a) {
  auto* sub = app.add_subcommand("er-stats", "Erdos-Renyi degree and spectral-gap trials");
  sub->add_option("--m", a.m, "Vertex counts")->delimiter(',')->required();
  sub->add_option("--rho", a.rho, "Absolute edge probabilities")->delimiter(',');
  sub->add_option("--rho-rule", a.rho_rule, "Rules such as 2*logm/m")->delimiter(',');
  sub->add_option("--trials", a.trials, "Trials per grid point")->check(CLI::PositiveNumber);
  sub->add_option("--kind", a.kind, "er_gap or er_degree")->check(CLI::IsMember({"er_gap", "er_degree"}));
  add_common(sub, a.common);
}

int run_er_stats(ErStatsArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  ExperimentDescriptor d;
  d.kind = a.kind;
  d.m_values = a.m;
  d.rho_rules = a.rho;
  d.rho_rules.insert(d.rho_rules.end(), a.rho_rule.begin(), a.rho_rule.end());
  if (d.rho_rules.empty()) throw Error(Errc::UsageError, "give --rho or --rho-rule");
  d.trials = a.trials;
  d.master_seed = a.common.seed;
  d.workers = a.common.workers;
  const auto rows = run_er_experiment(d);

  const ConfigEcho echo = {{"command", "er-stats"},          {"kind", d.kind},
                           {"m", join(d.m_values)},           {"rho", join(d.rho_rules)},
                           {"trials", std::to_string(d.trials)}, {"seed", std::to_string(d.master_seed)}};
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") write_er_json(sink.data(), rows, echo);
  else write_er_csv(sink.data(), rows, echo);
  sink.finish();

  std::size_t connected = 0, with_gap = 0;
  std::vector<double> scaled;
  for (const auto& r : rows) {
    if (!r.connected) continue;
    ++with_gap;
    if (*r.connected) ++connected;
    scaled.push_back(*r.scaled_gap);
  }
  sink.summary() << "er-stats: " << rows.size() << " rows";
  if (with_gap) sink.summary() << ", connected " << connected << "/" << with_gap << ", median scaled_gap "
                               << format_double(median(scaled));
  sink.summary() << '\n';
  return 0;
}

// ------------------------------------------------------------ group-sample

struct GroupSampleArgs {
  Common common;
  std::string model;
  std::uint32_t m = 0;
  std::string param;
};

void setup_group_sample(CLI::App& app, GroupSampleArgs& a) {
  auto* sub = app.add_subcommand("group-sample", "Sample one triangular presentation");
  sub->add_option("--model", a.model, "density, uniform or binomial")->required();
  sub->add_option("--m", a.m, "Generator count")->required()->check(CLI::PositiveNumber);
  sub->add_option("--param", a.param, "d, N or a rho rule")->required();
  add_common(sub, a.common);
}

int run_group_sample(GroupSampleArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  const ModelKind kind = parse_model(a.model);
  const double param = resolve_model_param(kind, a.param, a.m);
  const Presentation p = sample_presentation(kind, a.m, param, a.common.seed);
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") {
    Json doc;
    doc["m"] = p.m;
    doc["model"] = p.model.to_string();
    doc["seed"] = p.seed;
    doc["relators"] = Json::array();
    for (const auto& r : p.relators)
      doc["relators"].push_back(letter_token(r.x) + " " + letter_token(r.y) + " " + letter_token(r.z));
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_presentation(sink.data(), p);
  }
  sink.finish();
  sink.summary() << "group-sample: " << p.relators.size() << " relators, model " << p.model.to_string() << '\n';
  return 0;
}

// ----------------------------------------------------------- link-spectrum

struct LinkArgs {
  Common common;
  std::string presentation;
  std::string model = "binomial";
  std::vector<std::uint32_t> m;
  std::vector<std::string> param;
  int trials = 1;
};

void setup_link_spectrum(CLI::App& app, LinkArgs& a) {
  auto* sub = app.add_subcommand("link-spectrum", "Spectral report of presentation links");
  sub->add_option("--presentation", a.presentation, "Presentation file (skips sampling)");
  sub->add_option("--model", a.model, "density, uniform or binomial");
  sub->add_option("--m", a.m, "Generator counts")->delimiter(',');
  sub->add_option("--param", a.param, "Model parameters (rho rules for binomial)")->delimiter(',');
  sub->add_option("--rho", a.param, "Alias of --param")->delimiter(',');
  sub->add_option("--trials", a.trials, "Trials per grid point")->check(CLI::PositiveNumber);
  add_common(sub, a.common);
}

int run_link_spectrum(LinkArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  std::vector<LinkTrialRow> rows;
  ConfigEcho echo{{"command", "link-spectrum"}};
  if (!a.presentation.empty()) {
    const Presentation p = read_presentation_file(a.presentation);
    LinkTrialRow row;
    row.m = p.m;
    row.model = p.model.to_string();
    row.param = p.model.param;
    row.seed = p.seed;
    row.report = link_spectral_report(p);
    if (p.model.kind == ModelKind::Binomial) row.finite_regime = finiteness_regime_flag(p.m, p.model.param);
    rows.push_back(row);
    echo.push_back({"presentation", a.presentation});
  } else {
    if (a.m.empty() || a.param.empty()) throw Error(Errc::UsageError, "give --presentation or --m and --param");
    LinkExperiment e;
    e.model = parse_model(a.model);
    e.m_values = a.m;
    e.params = a.param;
    e.trials = a.trials;
    e.master_seed = a.common.seed;
    e.workers = a.common.workers;
    rows = run_link_experiment(e);
    echo.insert(echo.end(), {{"model", a.model},
                             {"m", join(a.m)},
                             {"param", join(a.param)},
                             {"trials", std::to_string(a.trials)},
                             {"seed", std::to_string(a.common.seed)}});
  }
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") write_link_json(sink.data(), rows, echo);
  else write_link_csv(sink.data(), rows, echo);
  sink.finish();
  std::vector<double> gaps;
  std::size_t connected = 0;
  for (const auto& r : rows) {
    gaps.push_back(r.report.gap);
    connected += r.report.connected ? 1 : 0;
  }
  sink.summary() << "link-spectrum: " << rows.size() << " rows, connected " << connected << "/" << rows.size()
                 << ", median gap " << format_double(median(gaps)) << '\n';
  return 0;
}

// ----------------------------------------------------------------- certify

struct CertifyArgs {
  Common common;
  std::string presentation;
  std::string model = "binomial";
  std::uint32_t m = 0;
  std::string param;
  int trials = 1;
  std::string families = "lp";
  double k_const = 1.0;
  std::optional<double> b_const;
  double eta = 0.01;
  double p_cap = 64.0;
};

void setup_certify(CLI::App& app, CertifyArgs& a) {
  auto* sub = app.add_subcommand("certify", "Certify fixed-point properties from measured link gaps");
  sub->add_option("--presentation", a.presentation, "Presentation file (skips sampling)");
  sub->add_option("--model", a.model, "density, uniform or binomial");
  sub->add_option("--m", a.m, "Generator count");
  sub->add_option("--param", a.param, "Model parameter");
  sub->add_option("--rho", a.param, "Alias of --param");
  sub->add_option("--trials", a.trials, "Sampled presentations")->check(CLI::PositiveNumber);
  sub->add_option("--families", a.families, "lp, theta, subquotient:alpha=A, custom:eps=E");
  sub->add_option("--K", a.k_const, "Constant K of the isomorphic-space threshold");
  sub->add_option("--B", a.b_const, "Constant B of the density threshold (echoed only)");
  sub->add_option("--eta", a.eta, "eta for the conformal dimension bound");
  sub->add_option("--p-cap", a.p_cap, "Largest p reported");
  add_common(sub, a.common);
}

int run_certify(CertifyArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  const auto families = parse_families(a.families);
  CertifyOptions opts;
  opts.k_const = a.k_const;
  opts.b_const = a.b_const;
  opts.eta = a.eta;
  opts.p_cap = a.p_cap;
  std::vector<Certificate> certs;
  ConfigEcho echo{{"command", "certify"}, {"families", a.families}, {"K", format_double(a.k_const)},
                  {"B", a.b_const ? format_double(*a.b_const) : ""}, {"eta", format_double(a.eta)},
                  {"p_cap", format_double(a.p_cap)}};
  if (!a.presentation.empty()) {
    certs.push_back(certify_presentation(read_presentation_file(a.presentation), families, opts));
    echo.push_back({"presentation", a.presentation});
  } else {
    if (a.m == 0 || a.param.empty()) throw Error(Errc::UsageError, "give --presentation or --m and --param");
    const ModelKind kind = parse_model(a.model);
    const double param = resolve_model_param(kind, a.param, a.m);
    const std::uint64_t master = a.common.seed;
    std::function<Certificate(std::size_t)> fn = [&](std::size_t t) {
      return certify_presentation(sample_presentation(kind, a.m, param, trial_seed(master, 0, t)), families, opts);
    };
    certs = run_indexed<Certificate>(static_cast<std::size_t>(a.trials), a.common.workers, fn);
    echo.insert(echo.end(), {{"model", a.model},
                             {"m", std::to_string(a.m)},
                             {"param", a.param},
                             {"trials", std::to_string(a.trials)},
                             {"seed", std::to_string(master)}});
  }
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") {
    Json doc;
    write_echo_json(doc, echo);
    doc["certificates"] = Json::array();
    for (const auto& c : certs) doc["certificates"].push_back(Json::parse(certificate_json(c)));
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_config_echo(sink.data(), echo);
    write_csv_row(sink.data(), {"m", "model", "seed", "trial", "n_relators", "gap", "connected", "family", "params",
                                "epsilon", "certified", "max_p", "max_p_unbounded", "confdim_lower", "K", "B"});
    for (std::size_t t = 0; t < certs.size(); ++t) {
      const auto& c = certs[t];
      for (const auto& f : c.families)
        write_csv_row(sink.data(),
                      {std::to_string(c.m), c.model, std::to_string(c.seed), std::to_string(t),
                       std::to_string(c.n_relators), format_double(c.gap), c.connected ? "1" : "0", f.family.name(),
                       f.family.params(), format_optional(f.epsilon), f.certified ? "1" : "0",
                       format_optional(f.max_p.p), f.max_p.unbounded ? "1" : "0", format_optional(c.confdim_lower),
                       format_double(c.k_const), format_optional(c.b_const)});
    }
  }
  sink.finish();
  sink.summary() << "certify: " << certs.size() << " certificates";
  for (std::size_t i = 0; i < families.size(); ++i) {
    std::size_t ok = 0;
    for (const auto& c : certs) ok += c.families[i].certified ? 1 : 0;
    sink.summary() << "; " << families[i].name() << (families[i].params().empty() ? "" : ":" + families[i].params())
                   << " certified " << ok << "/" << certs.size();
  }
  sink.summary() << '\n';
  return 0;
}

// ---------------------------------------------------------------- poincare

struct PoincareArgs {
  Common common;
  GraphChoice graph;
  std::vector<double> p{2.0};
  std::size_t k = 1;
  int restarts = 32;
  int max_iter = 5000;
  bool bipartite = false;
  bool no_upper = false;
};

void setup_poincare(CLI::App& app, PoincareArgs& a) {
  auto* sub = app.add_subcommand("poincare", "Estimate p-Poincare constants of a graph");
  a.graph.add(sub);
  sub->add_option("--p", a.p, "Exponents")->delimiter(',');
  sub->add_option("--k", a.k, "Target dimension")->check(CLI::PositiveNumber);
  sub->add_option("--restarts", a.restarts, "Random restarts")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", a.max_iter, "Ascent iterations per restart")->check(CLI::PositiveNumber);
  sub->add_flag("--bipartite", a.bipartite, "Infimum over functions constant on each part");
  sub->add_flag("--no-upper", a.no_upper, "Skip the analytic upper bound");
  add_common(sub, a.common);
}

int run_poincare(PoincareArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  const auto [g, id] = a.graph.load();
  PoincareOptions opts;
  opts.max_iter = a.max_iter;
  opts.upper_bound = !a.no_upper;
  std::vector<int> part;
  if (a.bipartite) {
    part = bipartition(g);
    if (part.empty() || g.has_isolated() || !is_connected(g))
      throw Error(Errc::NotBipartite, "graph is not connected and bipartite");
  }
  std::vector<PoincareEstimate> ests;
  for (double p : a.p)
    ests.push_back(a.bipartite ? bipartite_poincare_estimate(g, part, p, a.k, a.restarts, a.common.seed, opts)
                               : poincare_estimate(g, p, a.k, a.restarts, a.common.seed, opts));
  const ConfigEcho echo{{"command", "poincare"},       {"graph", id},
                        {"p", join(a.p)},              {"k", std::to_string(a.k)},
                        {"restarts", std::to_string(a.restarts)}, {"max_iter", std::to_string(a.max_iter)},
                        {"variant", a.bipartite ? "bipartite" : "standard"}, {"seed", std::to_string(a.common.seed)}};
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") {
    Json doc;
    write_echo_json(doc, echo);
    doc["rows"] = Json::array();
    for (const auto& e : ests)
      doc["rows"].push_back({{"graph_id", id},
                             {"p", e.p},
                             {"k", e.dim},
                             {"estimate", e.lower_estimate},
                             {"upper_bound", e.upper_bound ? Json(*e.upper_bound) : Json(nullptr)},
                             {"restarts", e.restarts_used},
                             {"seed", a.common.seed},
                             {"variant", a.bipartite ? "bipartite" : "standard"}});
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_config_echo(sink.data(), echo);
    write_csv_row(sink.data(), {"graph_id", "p", "k", "estimate", "upper_bound", "restarts", "seed", "variant"});
    for (const auto& e : ests)
      write_csv_row(sink.data(), {id, format_double(e.p), std::to_string(e.dim), format_double(e.lower_estimate),
                                  format_optional(e.upper_bound), std::to_string(e.restarts_used),
                                  std::to_string(a.common.seed), a.bipartite ? "bipartite" : "standard"});
  }
  sink.finish();
  sink.summary() << "poincare: " << id;
  for (const auto& e : ests) sink.summary() << "; p=" << format_double(e.p) << " pi>=" << format_double(e.lower_estimate);
  sink.summary() << '\n';
  return 0;
}

// -------------------------------------------------------------- plaplacian

struct PLapArgs {
  Common common;
  GraphChoice graph;
  std::vector<double> p{2.0};
  int restarts = 32;
  bool with_gap = false;
};

void setup_plaplacian(CLI::App& app, PLapArgs& a) {
  auto* sub = app.add_subcommand("plaplacian", "Bounds on the first nonzero p-Laplacian eigenvalue");
  a.graph.add(sub);
  sub->add_option("--p", a.p, "Exponents")->delimiter(',');
  sub->add_option("--restarts", a.restarts, "Random restarts")->check(CLI::PositiveNumber);
  sub->add_flag("--with-gap", a.with_gap, "Also evaluate the spectral-gap lower bound");
  add_common(sub, a.common);
}

int run_plaplacian(PLapArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  const auto [g, id] = a.graph.load();
  std::optional<double> gap;
  if (a.with_gap) gap = restricted_norm(g);
  std::vector<PLaplacianReport> reps;
  for (double p : a.p) reps.push_back(lambda1p_report(g, p, a.restarts, a.common.seed, p >= 2.0 ? gap : std::nullopt));
  const ConfigEcho echo{{"command", "plaplacian"}, {"graph", id}, {"p", join(a.p)},
                        {"restarts", std::to_string(a.restarts)}, {"with_gap", a.with_gap ? "true" : "false"},
                        {"seed", std::to_string(a.common.seed)}};
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") {
    Json doc;
    write_echo_json(doc, echo);
    doc["rows"] = Json::array();
    for (const auto& r : reps)
      doc["rows"].push_back({{"graph_id", id},
                             {"p", r.p},
                             {"poincare_lower", r.poincare_lower},
                             {"lambda_1p_upper", r.lambda_1p_upper},
                             {"theorem37_lower", r.theorem37_lower},
                             {"gap", r.gap ? Json(*r.gap) : Json(nullptr)}});
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_config_echo(sink.data(), echo);
    write_csv_row(sink.data(), {"graph_id", "p", "poincare_lower", "lambda_1p_upper", "theorem37_lower", "gap"});
    for (const auto& r : reps)
      write_csv_row(sink.data(), {id, format_double(r.p), format_double(r.poincare_lower),
                                  format_double(r.lambda_1p_upper), format_double(r.theorem37_lower),
                                  format_optional(r.gap)});
  }
  sink.finish();
  sink.summary() << "plaplacian: " << id;
  for (const auto& r : reps)
    sink.summary() << "; p=" << format_double(r.p) << " lambda<=" << format_double(r.lambda_1p_upper);
  sink.summary() << '\n';
  return 0;
}

// --------------------------------------------------------- fixedpoint-demo

struct FixedArgs {
  Common common;
  std::string complex_file;
  std::string named = "triangle";
  std::string action_file;
  double p = 2.0;
  std::size_t k = 1;
  std::vector<double> phi0;
  double tol = 1e-8;
  int max_iter = 200;
  int restarts = 16;
};

void setup_fixedpoint(CLI::App& app, FixedArgs& a) {
  auto* sub = app.add_subcommand("fixedpoint-demo", "Energy contraction towards a fixed point on a 2-complex");
  sub->add_option("--complex", a.complex_file, "Complex file ('v <n>' then 't i j k' lines)");
  sub->add_option("--named", a.named, "triangle or octahedron")->check(CLI::IsMember({"triangle", "octahedron"}));
  sub->add_option("--action", a.action_file, "Generators in cycle notation, one per line");
  sub->add_option("--p", a.p, "Norm exponent");
  sub->add_option("--k", a.k, "Target dimension")->check(CLI::PositiveNumber);
  sub->add_option("--phi0", a.phi0, "Initial map, n*k values row-major (default: random per orbit)")
      ->delimiter(',');
  sub->add_option("--tol", a.tol, "Stop once the energy is below this");
  sub->add_option("--max-iter", a.max_iter, "Iteration limit")->check(CLI::PositiveNumber);
  sub->add_option("--restarts", a.restarts, "Restarts for the link Poincare estimates")->check(CLI::PositiveNumber);
  add_common(sub, a.common);
}

int run_fixedpoint(FixedArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  const SimplicialComplex2 complex =
      !a.complex_file.empty() ? read_complex_file(a.complex_file) : a.named == "octahedron" ? octahedron() : single_triangle();
  const FiniteAction action =
      a.action_file.empty() ? FiniteAction::trivial(complex.vertex_count) : read_action_file(a.action_file, complex);
  const std::size_t n = complex.vertex_count;
  VertexField phi0{a.k, {}};
  if (!a.phi0.empty()) {
    if (a.phi0.size() != n * a.k) throw Error(Errc::ShapeMismatch, "--phi0 needs n*k values");
    phi0.values = a.phi0;
  } else {
    phi0.values.assign(n * a.k, 0.0);
    CounterRng rng(a.common.seed);
    for (Vertex rep : action.representatives()) {
      std::vector<double> val(a.k);
      for (double& x : val) x = rng.normal();
      for (Vertex v = 0; v < n; ++v)
        if (action.representative(v) == rep)
          for (std::size_t j = 0; j < a.k; ++j) phi0.at(v, j) = val[j];
    }
  }
  FixedPointOptions opts;
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  const auto result = iterate_fixed_point(complex, action, phi0, a.p, opts);
  const double link_pi = max_link_poincare(complex, action, a.p, a.restarts, a.common.seed);

  const ConfigEcho echo{{"command", "fixedpoint-demo"},
                        {"complex", a.complex_file.empty() ? a.named : a.complex_file},
                        {"action", a.action_file.empty() ? "trivial" : a.action_file},
                        {"group_order", std::to_string(action.order())},
                        {"p", format_double(a.p)},
                        {"k", std::to_string(a.k)},
                        {"tol", format_double(a.tol)},
                        {"max_iter", std::to_string(a.max_iter)},
                        {"seed", std::to_string(a.common.seed)},
                        {"max_link_pi", format_double(link_pi)},
                        {"converged", result.converged ? "true" : "false"}};
  Sink sink(a.common.out_path, out, err);
  if (a.common.format == "json") {
    Json doc;
    write_echo_json(doc, echo);
    doc["energy"] = result.energy_trace;
    doc["ratios"] = result.ratios;
    doc["distances"] = result.distances;
    doc["phi_final"] = result.phi_final.values;
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_config_echo(sink.data(), echo);
    write_csv_row(sink.data(), {"step", "energy", "ratio", "distance"});
    for (std::size_t i = 0; i < result.energy_trace.size(); ++i)
      write_csv_row(sink.data(), {std::to_string(i), format_double(result.energy_trace[i]),
                                  i == 0 ? "" : format_double(result.ratios[i - 1]),
                                  i == 0 ? "" : format_double(result.distances[i - 1])});
  }
  sink.finish();
  const double worst = result.ratios.empty() ? 0.0 : *std::max_element(result.ratios.begin(), result.ratios.end());
  sink.summary() << "fixedpoint-demo: " << (result.converged ? "converged" : "not converged") << " after "
                 << result.iterations << " steps, max ratio " << format_double(worst) << ", max link pi "
                 << format_double(link_pi) << '\n';
  return result.converged ? 0 : 3;
}

// ------------------------------------------------------------- union-check

struct UnionArgs {
  Common common;
  std::string graph1, graph2;
  std::size_t pairs = 10;
  std::size_t n = 20;
  double density = 0.5;
};

void setup_union(CLI::App& app, UnionArgs& a) {
  auto* sub = app.add_subcommand("union-check", "Gap bounds for sums of weighted graphs");
  sub->add_option("--graph1", a.graph1, "First graph file");
  sub->add_option("--graph2", a.graph2, "Second graph file");
  sub->add_option("--pairs", a.pairs, "Random pairs when no files are given")->check(CLI::PositiveNumber);
  sub->add_option("--n", a.n, "Vertices of the random graphs")->check(CLI::Range(3, 2000));
  sub->add_option("--density", a.density, "Edge probability of the random graphs")->check(CLI::Range(0.0, 1.0));
  add_common(sub, a.common);
}

// Weighted cycle plus random chords, so that no vertex is isolated.
WeightedGraph random_union_operand(std::size_t n, double density, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<WeightEntry> e;
  for (Vertex s = 0; s < n; ++s) e.push_back({s, static_cast<Vertex>((s + 1) % n), 0.5 + rng.uniform()});
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 2; t < n; ++t)
      if (rng.uniform() < density) e.push_back({s, t, 0.5 + rng.uniform()});
  return build_graph(n, e);
}

int run_union(UnionArgs& a, std::ostream& out, std::ostream& err) {
  resolve_seed(a.common);
  struct Row {
    std::string id;
    std::uint64_t seed = 0;
    UnionGapCheck u;
    PerturbationCheck pert;
  };
  std::vector<Row> rows;
  ConfigEcho echo{{"command", "union-check"}};
  if (!a.graph1.empty() || !a.graph2.empty()) {
    if (a.graph1.empty() || a.graph2.empty()) throw Error(Errc::UsageError, "give both --graph1 and --graph2");
    const auto g1 = read_graph_file(a.graph1), g2 = read_graph_file(a.graph2);
    rows.push_back({a.graph1 + "+" + a.graph2, 0, union_gap_bound(g1, g2), perturbation_bound_check(g1, g2)});
    echo.insert(echo.end(), {{"graph1", a.graph1}, {"graph2", a.graph2}});
  } else {
    std::function<Row(std::size_t)> fn = [&](std::size_t i) {
      const std::uint64_t s = trial_seed(a.common.seed, 0, i);
      const auto g1 = random_union_operand(a.n, a.density, hash_seed({s, 1}));
      const auto g2 = random_union_operand(a.n, a.density, hash_seed({s, 2}));
      return Row{"pair" + std::to_string(i), s, union_gap_bound(g1, g2), perturbation_bound_check(g1, g2)};
    };
    rows = run_indexed<Row>(a.pairs, a.common.workers, fn);
    echo.insert(echo.end(), {{"pairs", std::to_string(a.pairs)},
                             {"n", std::to_string(a.n)},
                             {"density", format_double(a.density)},
                             {"seed", std::to_string(a.common.seed)}});
  }
  Sink sink(a.common.out_path, out, err);
  const std::vector<std::string> cols = {"id",    "seed",       "delta",     "bound",        "norm1",
                                         "norm2", "norm_sum",   "union_holds", "delta_prime", "norm_base",
                                         "norm_union", "perturbation_lhs", "perturbation_holds"};
  if (a.common.format == "json") {
    Json doc;
    write_echo_json(doc, echo);
    doc["rows"] = Json::array();
    for (const auto& r : rows)
      doc["rows"].push_back({{"id", r.id},
                             {"seed", r.seed},
                             {"delta", r.u.delta},
                             {"bound", r.u.bound},
                             {"norm1", r.u.norm1},
                             {"norm2", r.u.norm2},
                             {"norm_sum", r.u.norm_sum},
                             {"union_holds", r.u.holds},
                             {"delta_prime", r.pert.delta_prime},
                             {"norm_base", r.pert.norm_base},
                             {"norm_union", r.pert.norm_union},
                             {"perturbation_lhs", r.pert.lhs},
                             {"perturbation_holds", r.pert.holds}});
    sink.data() << doc.dump(2) << '\n';
  } else {
    write_config_echo(sink.data(), echo);
    write_csv_row(sink.data(), cols);
    for (const auto& r : rows)
      write_csv_row(sink.data(), {r.id, std::to_string(r.seed), format_double(r.u.delta), format_double(r.u.bound),
                                  format_double(r.u.norm1), format_double(r.u.norm2), format_double(r.u.norm_sum),
                                  r.u.holds ? "1" : "0", format_double(r.pert.delta_prime),
                                  format_double(r.pert.norm_base), format_double(r.pert.norm_union),
                                  format_double(r.pert.lhs), r.pert.holds ? "1" : "0"});
  }
  sink.finish();
  std::size_t ok_u = 0, ok_p = 0;
  for (const auto& r : rows) {
    ok_u += r.u.holds ? 1 : 0;
    ok_p += r.pert.holds ? 1 : 0;
  }
  sink.summary() << "union-check: " << rows.size() << " pairs, union bound holds " << ok_u << "/" << rows.size()
                 << ", perturbation bound holds " << ok_p << "/" << rows.size() << '\n';
  return ok_u == rows.size() && ok_p == rows.size() ? 0 : 3;
}

std::vector<std::string> apply_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw Error(Errc::UsageError, "--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  const ExperimentConfig cfg = config_load(*path);
  const bool has_command = !rest.empty() && rest[0].rfind("-", 0) != 0;
  if (cfg.command) {
    if (!has_command) rest.insert(rest.begin(), *cfg.command);
    else if (rest[0] != *cfg.command)
      throw Error(Errc::UsageError, "config file is for '" + *cfg.command + "', not '" + rest[0] + "'");
  }
  return merge_config(rest, cfg);
}

}  // namespace

WeightedGraph named_graph(const std::string& desc) {
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw Error(Errc::UsageError, "named graph needs kind:size, got '" + desc + "'");
  const std::string kind = desc.substr(0, colon), arg = desc.substr(colon + 1);
  if (kind == "bipartite") {
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw Error(Errc::UsageError, "bipartite needs A,B");
    return complete_bipartite(parse_size(arg.substr(0, comma), "part size"), parse_size(arg.substr(comma + 1), "part size"));
  }
  const std::size_t n = parse_size(arg, "graph size");
  if (kind == "complete") return complete_graph(n);
  if (kind == "cycle") return cycle_graph(n);
  if (kind == "path") return path_graph(n);
  if (kind == "star") return star_graph(n);
  throw Error(Errc::UsageError, "unknown graph kind '" + kind + "'");
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral gaps, Poincare constants and fixed-point certificates", "zsl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  ErStatsArgs er;
  GroupSampleArgs gs;
  LinkArgs ln;
  CertifyArgs cert;
  PoincareArgs pc;
  PLapArgs pl;
  FixedArgs fx;
  UnionArgs un;
  setup_er_stats(app, er);
  setup_group_sample(app, gs);
  setup_link_spectrum(app, ln);
  setup_certify(app, cert);
  setup_poincare(app, pc);
  setup_plaplacian(app, pl);
  setup_fixedpoint(app, fx);
  setup_union(app, un);
  for (auto* sub : app.get_subcommands({})) sub->add_option("--config", "key=value file; flags override it");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out, err);
      return 2;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "er-stats") return run_er_stats(er, out, err);
    if (name == "group-sample") return run_group_sample(gs, out, err);
    if (name == "link-spectrum") return run_link_spectrum(ln, out, err);
    if (name == "certify") return run_certify(cert, out, err);
    if (name == "poincare") return run_poincare(pc, out, err);
    if (name == "plaplacian") return run_plaplacian(pl, out, err);
    if (name == "fixedpoint-demo") return run_fixedpoint(fx, out, err);
    if (name == "union-check") return run_union(un, out, err);
    err << "unknown subcommand " << name << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace zsl::cli
