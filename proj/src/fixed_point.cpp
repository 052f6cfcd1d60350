#include "zsl/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zsl/error.hpp"
#include "zsl/poincare.hpp"
#include "zsl/power.hpp"

namespace zsl {

LinkSystem link_system(const SimplicialComplex2& complex, const FiniteAction& action) {
  LinkSystem sys;
  for (Vertex m : action.representatives()) {
    VertexLink link = link_of(complex, m);
    if (link.neighbors.empty() || link.graph.total_weight() <= 0.0)
      throw Error(Errc::DisconnectedLink, "vertex " + std::to_string(m) + " lies in no triangle");
    if (link.graph.has_isolated() || !is_connected(link.graph))
      throw Error(Errc::DisconnectedLink, "link of vertex " + std::to_string(m) + " is disconnected");
    sys.reps.push_back(m);
    sys.nu.push_back(measures(link.graph).nu);
    sys.a.push_back(link.graph.total_weight() / static_cast<double>(action.stabilizer_order(m)));
    sys.links.push_back(std::move(link));
  }
  return sys;
}

namespace {

double lp_dist_pow(const VertexField& f, Vertex u, const VertexField& g, Vertex v, double p) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.dim; ++j) s += abs_pow(f.at(u, j) - g.at(v, j), p);
  return s;
}

void check_map(const VertexField& f, std::size_t n, std::size_t dim, const FiniteAction& action) {
  if (f.dim == 0 || f.values.size() != n * f.dim || f.dim != dim)
    throw Error(Errc::ShapeMismatch, "map does not match the complex");
  for (Vertex v = 0; v < n; ++v) {
    const Vertex r = action.representative(v);
    for (std::size_t j = 0; j < dim; ++j)
      if (f.at(v, j) != f.at(r, j))
        throw Error(Errc::NotEquivariant, "map differs on the orbit of vertex " + std::to_string(r));
  }
}

}  // namespace

EnergyValue energy(const LinkSystem& sys, const FiniteAction& action, const VertexField& phi,
                   const VertexField& psi, double p) {
  if (!(p >= 1.0)) throw Error(Errc::BadParameter, "p must be at least 1");
  const std::size_t n = action.elements().empty() ? 0 : action.elements().front().size();
  check_map(phi, n, phi.dim, action);
  check_map(psi, n, phi.dim, action);
  EnergyValue e;
  for (std::size_t i = 0; i < sys.reps.size(); ++i) {
    const Vertex m = sys.reps[i];
    const auto& link = sys.links[i];
    const WeightedGraph& g = link.graph;
    const double total = g.total_weight();
    double vertex_term = 0.0, edge_term = 0.0;
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
      const Vertex ns = link.neighbors[s];
      vertex_term += sys.nu[i][s] * lp_dist_pow(phi, ns, psi, m, p);
      auto nb = g.neighbors(s);
      auto w = g.weights(s);
      for (std::size_t k = 0; k < nb.size(); ++k)
        edge_term += w[k] / total * lp_dist_pow(phi, ns, psi, link.neighbors[nb[k]], p);
    }
    e.contributions.push_back(sys.a[i] * vertex_term);
    e.vertex_form += sys.a[i] * vertex_term;
    e.edge_form += sys.a[i] * edge_term;
  }
  if (std::abs(e.vertex_form - e.edge_form) > 1e-10 * std::max(1.0, std::abs(e.vertex_form)))
    throw std::logic_error("energy forms disagree: " + std::to_string(e.edge_form) + " vs " +
                           std::to_string(e.vertex_form));
  e.value = std::pow(e.vertex_form, 1.0 / p);
  return e;
}

EnergyValue energy(const SimplicialComplex2& complex, const FiniteAction& action, const VertexField& phi,
                   const VertexField& psi, double p) {
  return energy(link_system(complex, action), action, phi, psi, p);
}

double map_distance(const LinkSystem& sys, const VertexField& phi, const VertexField& psi, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < sys.reps.size(); ++i) s += sys.a[i] * lp_dist_pow(phi, sys.reps[i], psi, sys.reps[i], p);
  return std::pow(s, 1.0 / p);
}

std::vector<double> p_mean(std::span<const double> nu, const VertexField& points, double p) {
  if (!(p > 1.0)) throw Error(Errc::BadParameter, "p must exceed 1");
  const std::size_t n = points.vertex_count();
  if (nu.size() != n || n == 0) throw Error(Errc::ShapeMismatch, "weights do not match the points");
  std::vector<double> out(points.dim), col(n);
  for (std::size_t j = 0; j < points.dim; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = points.at(i, j);
    out[j] = lp_center(nu, col, p);
  }
  return out;
}

FixedPointResult iterate_fixed_point(const SimplicialComplex2& complex, const FiniteAction& action,
                                     const VertexField& phi0, double p, const FixedPointOptions& options) {
  if (!(p > 1.0)) throw Error(Errc::BadParameter, "p must exceed 1");
  if (!complex.is_connected()) throw Error(Errc::Disconnected, "complex is not connected");
  const LinkSystem sys = link_system(complex, action);
  const std::size_t n = complex.vertex_count;
  const std::size_t dim = phi0.dim;
  check_map(phi0, n, dim, action);

  FixedPointResult r;
  VertexField phi = phi0;
  double e = energy(sys, action, phi, phi, p).value;
  r.energy_trace.push_back(e);
  while (e >= options.tol && r.iterations < options.max_iter) {
    VertexField psi{dim, std::vector<double>(n * dim)};
    std::vector<std::vector<double>> at_rep(sys.reps.size());
    for (std::size_t i = 0; i < sys.reps.size(); ++i) {
      const auto& link = sys.links[i];
      VertexField pts{dim, std::vector<double>(link.neighbors.size() * dim)};
      for (std::size_t s = 0; s < link.neighbors.size(); ++s)
        for (std::size_t j = 0; j < dim; ++j) pts.at(s, j) = phi.at(link.neighbors[s], j);
      // The target action is trivial, so averaging over the stabilizer
      // orbit of psi(m) leaves it unchanged.
      at_rep[i] = p_mean(sys.nu[i], pts, p);
    }
    for (Vertex v = 0; v < n; ++v) {
      const auto it = std::lower_bound(sys.reps.begin(), sys.reps.end(), action.representative(v));
      const auto& val = at_rep[static_cast<std::size_t>(it - sys.reps.begin())];
      for (std::size_t j = 0; j < dim; ++j) psi.at(v, j) = val[j];
    }
    VertexField next = phi;
    for (std::size_t i = 0; i < next.values.size(); ++i) next.values[i] = 0.5 * (phi.values[i] + psi.values[i]);
    r.distances.push_back(map_distance(sys, phi, next, p));
    const double e_next = energy(sys, action, next, next, p).value;
    r.ratios.push_back(e > 0.0 ? e_next / e : 0.0);
    r.energy_trace.push_back(e_next);
    phi = std::move(next);
    e = e_next;
    ++r.iterations;
  }
  r.converged = e < options.tol;
  r.phi_final = std::move(phi);
  return r;
}

double max_link_poincare(const SimplicialComplex2& complex, const FiniteAction& action, double p,
                         int restarts, std::uint64_t seed) {
  const LinkSystem sys = link_system(complex, action);
  PoincareOptions opts;
  opts.upper_bound = false;
  double best = 0.0;
  for (const auto& link : sys.links)
    best = std::max(best, poincare_estimate(link.graph, p, 1, restarts, seed, opts).lower_estimate);
  return best;
}

}  // namespace zsl
