#include "zsl/certify.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "zsl/csv.hpp"
#include "zsl/error.hpp"
#include "zsl/link.hpp"

namespace zsl {

double epsilon_lp(double p) {
  if (!(p >= 2.0)) throw Error(Errc::BadParameter, "epsilon_lp needs p >= 2");
  // Each factor is a power of two at p = 2, so epsilon_lp(2) is exactly 1/4.
  return 2.0 * std::pow(p, -p / 2.0) * std::exp2(-p * p / 2.0);
}

double epsilon_isomorphic(double p, double d_bm, double k_const) {
  if (!(p >= 2.0)) throw Error(Errc::BadParameter, "epsilon_isomorphic needs p >= 2");
  if (!(d_bm >= 1.0)) throw Error(Errc::BadParameter, "Banach-Mazur distance must be >= 1");
  if (!(k_const > 0.0)) throw Error(Errc::BadParameter, "K must be positive");
  return k_const * std::pow(p, -p / 2.0) * std::exp2(-p * p / 2.0) * std::pow(d_bm, -p * (p + 1.0) / 2.0);
}

namespace {

double parse_value(const std::string& text, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw Error(Errc::BadParameter, "bad family '" + whole + "'");
  return v;
}

}  // namespace

Family Family::parse(const std::string& text) {
  Family f;
  if (text == "lp") return f;
  if (text == "theta") {
    f.kind = FamilyKind::Theta;
    return f;
  }
  const std::string sq = "subquotient:alpha=", cu = "custom:eps=";
  if (text.rfind(sq, 0) == 0) {
    f.kind = FamilyKind::Subquotient;
    f.alpha = parse_value(text.substr(sq.size()), text);
    if (!(f.alpha >= 1.0)) throw Error(Errc::BadParameter, "alpha must be >= 1");
    return f;
  }
  if (text.rfind(cu, 0) == 0) {
    f.kind = FamilyKind::Custom;
    f.eps = parse_value(text.substr(cu.size()), text);
    if (!(f.eps > 0.0)) throw Error(Errc::BadParameter, "custom epsilon must be positive");
    return f;
  }
  throw Error(Errc::BadParameter, "unknown family '" + text + "'");
}

std::string Family::name() const {
  switch (kind) {
    case FamilyKind::Lp: return "lp";
    case FamilyKind::Theta: return "theta";
    case FamilyKind::Subquotient: return "subquotient";
    case FamilyKind::Custom: return "custom";
  }
  return "lp";
}

std::string Family::params() const {
  if (kind == FamilyKind::Subquotient) return "alpha=" + format_double(alpha);
  if (kind == FamilyKind::Custom) return "eps=" + format_double(eps);
  return "";
}

std::vector<Family> parse_families(const std::string& comma_list) {
  std::vector<Family> out;
  std::stringstream ss(comma_list);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto b = item.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const auto e = item.find_last_not_of(" \t");
    out.push_back(Family::parse(item.substr(b, e - b + 1)));
  }
  if (out.empty()) throw Error(Errc::BadParameter, "no families given");
  return out;
}

double family_epsilon(const Family& f, double p, double k_const) {
  switch (f.kind) {
    case FamilyKind::Lp:
    case FamilyKind::Theta: return epsilon_lp(p);
    case FamilyKind::Subquotient: return epsilon_isomorphic(p, f.alpha, k_const);
    case FamilyKind::Custom: return f.eps;
  }
  return 0.0;
}

MaxP max_p_certified(double gap, const Family& family, double k_const, double cap) {
  MaxP out;
  if (family.kind == FamilyKind::Custom) return out;
  if (!(cap >= 2.0)) throw Error(Errc::BadParameter, "p cap must be >= 2");
  if (gap <= 0.0) {
    out.p = cap;
    out.unbounded = true;
    return out;
  }
  auto eps = [&](double p) { return family_epsilon(family, p, k_const); };
  // The boundary point where epsilon meets the gap; p = 2 itself counts so
  // that the search inverts epsilon on all of [2, cap].
  if (eps(2.0) < gap) return out;
  if (eps(cap) >= gap) {
    out.p = cap;
    return out;
  }
  double lo = 2.0, hi = cap;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (eps(mid) >= gap) lo = mid;
    else hi = mid;
  }
  out.p = lo;
  return out;
}

bool density_condition(double m, double d, double eta) {
  const double lm = std::log(m);
  return d >= 1.0 / 3.0 + (std::log(lm) - std::log(2.0 - eta)) / (3.0 * lm);
}

namespace {

void check_density_inputs(double m, double d, double eta) {
  if (!(d > 0.0 && d < 1.0)) throw Error(Errc::BadParameter, "density must lie in (0, 1)");
  if (!(eta > 0.0)) throw Error(Errc::BadParameter, "eta must be positive");
  if (!(m > 1.0)) throw Error(Errc::BadParameter, "m must exceed 1");
}

double lp_endpoint(double m, double d, double eta, double log_term) {
  const double num = std::max(0.0, (3.0 * d - 1.0) * std::log(m));
  return std::sqrt(num / (eta + log_term));
}

}  // namespace

Corollary14Ranges corollary14_ranges(double m, double d, double eta, std::optional<double> alpha) {
  check_density_inputs(m, d, eta);
  Corollary14Ranges r;
  r.density_condition_holds = eta < 2.0 && density_condition(m, d, eta);
  r.p_max_lp = lp_endpoint(m, d, eta, std::log(2.0));
  r.lp_range_empty = r.p_max_lp < 2.0;
  if (alpha) {
    if (!(*alpha >= 1.0)) throw Error(Errc::BadParameter, "alpha must be >= 1");
    r.p_max_subquotient = lp_endpoint(m, d, eta, std::log(2.0 * *alpha)) - 0.5;
    r.subquotient_range_empty = *r.p_max_subquotient < 2.0;
  }
  return r;
}

double confdim_lower_bound(double m, double d, double eta) {
  check_density_inputs(m, d, eta);
  return lp_endpoint(m, d, eta, std::log(2.0));
}

Theorem71Threshold theorem71_threshold(double m, double rho, double b_const) {
  if (!(b_const > 0.0)) throw Error(Errc::BadParameter, "B must be positive");
  if (!(rho > 0.0 && rho <= 1.0)) throw Error(Errc::BadParameter, "rho must lie in (0, 1]");
  if (!(m > 1.0)) throw Error(Errc::BadParameter, "m must exceed 1");
  Theorem71Threshold t;
  t.certifiable_epsilon = std::sqrt(b_const / (rho * m * m));
  t.log_rule = std::sqrt(8.0 * b_const / std::log(m));
  return t;
}

Certificate certify_gap(double gap, const std::vector<Family>& families, const CertifyOptions& options) {
  Certificate c;
  c.gap = gap;
  c.k_const = options.k_const;
  c.b_const = options.b_const;
  for (const auto& f : families) {
    FamilyResult r;
    r.family = f;
    r.epsilon = f.kind == FamilyKind::Custom ? f.eps : family_epsilon(f, 2.0, options.k_const);
    r.certified = gap < *r.epsilon;
    if (r.certified) r.max_p = max_p_certified(gap, f, options.k_const, options.p_cap);
    c.families.push_back(r);
  }
  return c;
}

Certificate certify_presentation(const Presentation& pres, const std::vector<Family>& families,
                                 const CertifyOptions& options) {
  double gap = 1.0;
  bool connected = false;
  if (!pres.relators.empty()) {
    const auto rep = link_spectral_report(pres);
    connected = rep.connected;
    gap = rep.connected ? rep.gap : 1.0;
  }
  Certificate c = certify_gap(gap, families, options);
  c.m = pres.m;
  c.model = pres.model.to_string();
  c.seed = pres.seed;
  c.n_relators = pres.relators.size();
  c.connected = connected;
  if (pres.model.kind == ModelKind::Density && pres.m > 1)
    c.confdim_lower = confdim_lower_bound(pres.m, pres.model.param, options.eta);
  return c;
}

namespace {

nlohmann::ordered_json to_json(const Certificate& c) {
  using J = nlohmann::ordered_json;
  J j;
  j["m"] = c.m;
  j["model"] = c.model;
  j["seed"] = c.seed;
  j["n_relators"] = c.n_relators;
  j["gap"] = c.gap;
  j["connected"] = c.connected;
  j["families"] = J::array();
  for (const auto& f : c.families) {
    J fj;
    fj["name"] = f.family.name();
    fj["params"] = f.family.params();
    fj["epsilon"] = f.epsilon ? J(*f.epsilon) : J(nullptr);
    fj["certified"] = f.certified;
    fj["max_p"] = f.max_p.p ? J(*f.max_p.p) : J(nullptr);
    fj["max_p_unbounded"] = f.max_p.unbounded;
    j["families"].push_back(std::move(fj));
  }
  j["confdim_lower"] = c.confdim_lower ? J(*c.confdim_lower) : J(nullptr);
  j["constants"] = {{"K", c.k_const}, {"B", c.b_const ? J(*c.b_const) : J(nullptr)}};
  return j;
}

}  // namespace

std::string certificate_json(const Certificate& c) { return to_json(c).dump(); }

void write_certificate_json(std::ostream& out, const Certificate& c) { out << to_json(c).dump(2) << '\n'; }

}  // namespace zsl
