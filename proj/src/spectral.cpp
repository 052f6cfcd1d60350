#include "zsl/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "zsl/error.hpp"

namespace zsl {

SymmetricEigen symmetric_eigen(std::vector<double> matrix, std::size_t n, bool want_vectors) {
  if (matrix.size() != n * n) throw Error(Errc::ShapeMismatch, "matrix is not n x n");
  SymmetricEigen out;
  out.values.assign(n, 0.0);
  if (n == 0) return out;
  if (want_vectors) out.vectors.assign(n * n, 0.0);
  std::vector<lapack_int> support(2 * n);
  lapack_int found = 0;
  const lapack_int ln = static_cast<lapack_int>(n);
  // Row-major storage of a symmetric matrix is its own transpose, so the
  // column-major routine sees the same matrix.
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'A', 'U', ln,
                                   matrix.data(), ln, 0.0, 0.0, 0, 0, 0.0, &found,
                                   out.values.data(), want_vectors ? out.vectors.data() : nullptr,
                                   ln, support.data());
  if (info != 0) throw Error(Errc::BadParameter, "dsyevr failed with info " + std::to_string(info));
  return out;
}

std::vector<double> symmetrized_markov(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> inv_sqrt(n);
  for (Vertex s = 0; s < n; ++s) {
    if (g.degree(s) <= 0.0)
      throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(s) + " has degree 0");
    inv_sqrt[s] = 1.0 / std::sqrt(g.degree(s));
  }
  std::vector<double> b(n * n, 0.0);
  for (Vertex s = 0; s < n; ++s) {
    auto nb = g.neighbors(s);
    auto w = g.weights(s);
    for (std::size_t i = 0; i < nb.size(); ++i) b[s * n + nb[i]] = w[i] * inv_sqrt[s] * inv_sqrt[nb[i]];
  }
  return b;
}

SpectralReport spectral_report(const WeightedGraph& g) {
  SpectralReport r;
  r.isolated_removed = g.isolated_count();
  if (r.isolated_removed == g.vertex_count()) throw Error(Errc::EmptyGraph, "every vertex is isolated");
  const WeightedGraph core = r.isolated_removed > 0 ? drop_isolated(g) : WeightedGraph{};
  const WeightedGraph& h = r.isolated_removed > 0 ? core : g;

  const std::size_t n = h.vertex_count();
  auto eig = symmetric_eigen(symmetrized_markov(h), n, false);
  r.eigenvalues.assign(eig.values.rbegin(), eig.values.rend());

  r.connected = r.isolated_removed == 0 && is_connected(h);
  r.bipartite = is_connected(h) && !bipartition(h).empty();
  if (!r.connected) {
    r.restricted_norm = 1.0;
  } else if (n == 1) {
    r.restricted_norm = 0.0;
  } else {
    r.restricted_norm = std::max(std::abs(r.eigenvalues[1]), std::abs(r.eigenvalues.back()));
  }
  return r;
}

double restricted_norm(const WeightedGraph& g) { return spectral_report(g).restricted_norm; }

PerturbationCheck perturbation_bound_check(const WeightedGraph& g1, const WeightedGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count())
    throw Error(Errc::SizeMismatch, "perturbation graphs differ in size");
  PerturbationCheck c;
  for (Vertex s = 0; s < g1.vertex_count(); ++s) {
    if (g1.degree(s) <= 0.0)
      throw Error(Errc::IsolatedVertex, "base graph vertex " + std::to_string(s) + " has degree 0");
    c.delta_prime = std::max(c.delta_prime, g2.degree(s) / g1.degree(s));
  }
  c.norm_base = restricted_norm(g1);
  c.norm_union = restricted_norm(graph_union(g1, g2));
  c.lhs = std::abs(c.norm_union - c.norm_base);
  c.holds = c.lhs <= c.delta_prime + 1e-12;
  return c;
}

double degree_irregularity(const std::vector<const WeightedGraph*>& graphs) {
  double delta = 0.0;
  for (const WeightedGraph* g : graphs) {
    const double total = g->total_weight();
    if (total <= 0.0) throw Error(Errc::EmptyGraph, "graph without edges");
    const double mean = total / static_cast<double>(g->vertex_count());
    for (double d : g->degrees()) delta += std::abs(d - mean) / total;
  }
  return delta;
}

UnionGapCheck union_gap_bound(const WeightedGraph& g1, const WeightedGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count()) throw Error(Errc::SizeMismatch, "union graphs differ in size");
  for (const WeightedGraph* g : {&g1, &g2})
    for (Vertex s = 0; s < g->vertex_count(); ++s)
      if (g->degree(s) <= 0.0)
        throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(s) + " has degree 0");
  UnionGapCheck c;
  c.delta = degree_irregularity({&g1, &g2});
  c.norm1 = restricted_norm(g1);
  c.norm2 = restricted_norm(g2);
  c.bound = std::min(1.0, c.delta + (1.0 - c.delta) * std::max(c.norm1, c.norm2));
  c.norm_sum = restricted_norm(graph_union(g1, g2));
  c.holds = c.norm_sum <= c.bound + 1e-12;
  return c;
}

}  // namespace zsl
