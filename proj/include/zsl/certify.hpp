#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zsl/presentation.hpp"

namespace zsl {

// 2 p^(-p/2) 2^(-p^2/2), p >= 2. Throws BadParameter.
double epsilon_lp(double p);
// K p^(-p/2) 2^(-p^2/2) d^(-p(p+1)/2), p >= 2, d >= 1, K > 0.
double epsilon_isomorphic(double p, double d_bm, double k_const);

enum class FamilyKind {
  Lp,           // L^p spaces
  Theta,        // subquotients of strictly 2/p-Hilbertian spaces
  Subquotient,  // alpha-isomorphic to a space of the first two kinds
  Custom,       // a user-supplied epsilon, independent of p
};

struct Family {
  FamilyKind kind = FamilyKind::Lp;
  double alpha = 1.0;  // Subquotient
  double eps = 0.0;    // Custom

  // "lp", "theta", "subquotient:alpha=2", "custom:eps=0.01". Throws BadParameter.
  static Family parse(const std::string& text);
  std::string name() const;    // "lp", "theta", "subquotient", "custom"
  std::string params() const;  // "", "alpha=2", "eps=0.01"
};

std::vector<Family> parse_families(const std::string& comma_list);

// Threshold of a family at exponent p (K enters only the Subquotient kind).
double family_epsilon(const Family& f, double p, double k_const = 1.0);

struct MaxP {
  std::optional<double> p;  // absent when not even p = 2 is certified
  bool unbounded = false;   // gap = 0: p is the cap
};

// Largest p >= 2 with epsilon(p) > gap, by bisection to 1e-9.
// Custom families have no p dependence and always return an empty p.
MaxP max_p_certified(double gap, const Family& family, double k_const = 1.0, double cap = 64.0);

struct Corollary14Ranges {
  double p_max_lp = 0.0;
  bool lp_range_empty = true;
  std::optional<double> p_max_subquotient;
  bool subquotient_range_empty = true;
  bool density_condition_holds = false;
};

// Throws BadParameter (d outside (0, 1), eta <= 0, m <= 1, alpha < 1).
Corollary14Ranges corollary14_ranges(double m, double d, double eta, std::optional<double> alpha = std::nullopt);
double confdim_lower_bound(double m, double d, double eta);
// d >= 1/3 + (log log m - log(2 - eta)) / (3 log m).
bool density_condition(double m, double d, double eta);

struct Theorem71Threshold {
  double certifiable_epsilon = 0.0;  // sqrt(B / (rho m^2))
  double log_rule = 0.0;             // sqrt(8 B / log m)
};

// Throws BadParameter (B <= 0, rho <= 0, m <= 1).
Theorem71Threshold theorem71_threshold(double m, double rho, double b_const);

struct FamilyResult {
  Family family;
  std::optional<double> epsilon;  // at p = 2 for the p families, the value itself for custom
  bool certified = false;
  MaxP max_p;
};

struct Certificate {
  std::uint32_t m = 0;
  std::string model;
  std::uint64_t seed = 0;
  std::size_t n_relators = 0;
  double gap = 1.0;
  bool connected = false;
  std::vector<FamilyResult> families;
  std::optional<double> confdim_lower;
  double k_const = 1.0;
  std::optional<double> b_const;
};

struct CertifyOptions {
  double k_const = 1.0;
  std::optional<double> b_const;
  double p_cap = 64.0;
  // Used for the conformal dimension bound when the model is a density model.
  double eta = 0.01;
};

// Empty, disconnected or isolated-vertex links give gap = 1 and certify nothing.
Certificate certify_presentation(const Presentation& pres, const std::vector<Family>& families,
                                 const CertifyOptions& options = {});
Certificate certify_gap(double gap, const std::vector<Family>& families, const CertifyOptions& options = {});

void write_certificate_json(std::ostream& out, const Certificate& c);
std::string certificate_json(const Certificate& c);

}  // namespace zsl
