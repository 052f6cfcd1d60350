#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "zsl/csv.hpp"
#include "zsl/graph.hpp"
#include "zsl/presentation.hpp"

namespace zsl {

// Link graph on the 2m letters (vertex index = letter code). Relator xyz
// adds 1 to parts[0] at {x, y^-1}, parts[1] at {y, z^-1}, parts[2] at
// {z, x^-1}; base is their sum.
struct LinkGraph {
  WeightedGraph base;
  std::array<WeightedGraph, 3> parts;
};

LinkGraph build_link(const Presentation& pres);

struct LinkReport {
  std::size_t n_relators = 0;
  double gap = 1.0;  // ||A^0|| of the base link; 1 when disconnected
  bool connected = false;
  std::size_t isolated = 0;
  std::array<double, 3> part_gaps{1.0, 1.0, 1.0};
  double delta = 0.0;  // degree irregularity summed over the three parts
};

// Throws EmptyLink when the presentation has no relators.
LinkReport link_spectral_report(const Presentation& pres);
LinkReport link_spectral_report(const LinkGraph& link, std::size_t n_relators);

// Edge density 1 - (1 - rho)^(4m - 2) of a part graph compared with G(2m, .).
double rho_prime(std::uint32_t m, double rho);

// rho >= m^-1.42.
bool finiteness_regime_flag(std::uint32_t m, double rho);

struct LinkExperiment {
  ModelKind model = ModelKind::Binomial;
  std::vector<std::uint32_t> m_values;
  // Binomial: rho rules (see RhoRule); density: d; uniform: N.
  std::vector<std::string> params;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int workers = 1;
};

struct LinkTrialRow {
  std::uint32_t m = 0;
  std::string model;
  double param = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  LinkReport report;
  bool finite_regime = false;
  std::uint64_t master_seed = 0;
  std::size_t grid = 0;
};

// Presentation sampled for one grid point and trial.
Presentation sample_presentation(ModelKind model, std::uint32_t m, double param, std::uint64_t seed);
// Resolves a parameter string for the given model and m. Throws InvalidDescriptor.
double resolve_model_param(ModelKind model, const std::string& text, std::uint32_t m);

std::vector<LinkTrialRow> run_link_experiment(const LinkExperiment& e);

const std::vector<std::string>& link_csv_columns();
void write_link_csv(std::ostream& out, const std::vector<LinkTrialRow>& rows, const ConfigEcho& config);
void write_link_json(std::ostream& out, const std::vector<LinkTrialRow>& rows, const ConfigEcho& config);

}  // namespace zsl
