#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zsl/complex.hpp"
#include "zsl/graph.hpp"

namespace zsl {

// Per-representative data shared by the energy and the iteration:
// a_m = (sum of link weights) / |Gamma_m| and the link's stationary measure.
struct LinkSystem {
  std::vector<Vertex> reps;
  std::vector<VertexLink> links;
  std::vector<std::vector<double>> nu;
  std::vector<double> a;
};

// Throws DisconnectedLink when some representative's link has no edges.
LinkSystem link_system(const SimplicialComplex2& complex, const FiniteAction& action);

struct EnergyValue {
  double value = 0.0;     // E(phi, psi)
  double edge_form = 0.0;  // sum a_m ||(n1,n2) -> phi(n1) - psi(n2)||^p over P
  double vertex_form = 0.0;  // sum a_m ||n -> phi(n) - psi(m)||^p over nu
  std::vector<double> contributions;  // vertex-form term of each representative
};

// Maps are VertexFields over the complex's vertices with the l^p norm on
// the coordinates. Both forms of the energy are evaluated and must agree
// to 1e-10 relative (std::logic_error otherwise).
// Throws ShapeMismatch, NotEquivariant (map not constant on orbits).
EnergyValue energy(const SimplicialComplex2& complex, const FiniteAction& action, const VertexField& phi,
                   const VertexField& psi, double p);
EnergyValue energy(const LinkSystem& sys, const FiniteAction& action, const VertexField& phi,
                   const VertexField& psi, double p);

// d(phi, psi) = (sum_m a_m ||phi(m) - psi(m)||^p)^(1/p).
double map_distance(const LinkSystem& sys, const VertexField& phi, const VertexField& psi, double p);

// argmin_x sum_n nu(n) ||points(n) - x||_p^p, coordinatewise.
// Throws BadParameter (p <= 1), ShapeMismatch.
std::vector<double> p_mean(std::span<const double> nu, const VertexField& points, double p);

struct FixedPointOptions {
  double tol = 1e-8;
  int max_iter = 200;
};

struct FixedPointResult {
  VertexField phi_final;
  std::vector<double> energy_trace;  // E(phi_0), E(phi_1), ...
  std::vector<double> ratios;        // E(phi_{n+1}) / E(phi_n)
  std::vector<double> distances;     // d(phi_n, phi_{n+1})
  int iterations = 0;
  bool converged = false;  // false: max_iter reached, trace is partial
};

// phi <- (phi + psi)/2 with psi(m) the p-mean of phi over the link of m.
// Throws Disconnected (1-skeleton), DisconnectedLink, NotEquivariant.
FixedPointResult iterate_fixed_point(const SimplicialComplex2& complex, const FiniteAction& action,
                                     const VertexField& phi0, double p, const FixedPointOptions& options = {});

// Largest estimated p-Poincare constant (scalar target) over the links of
// the orbit representatives.
double max_link_poincare(const SimplicialComplex2& complex, const FiniteAction& action, double p,
                         int restarts, std::uint64_t seed);

}  // namespace zsl
