#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "zsl/graph.hpp"
#include "zsl/rng.hpp"

namespace zsl::testing {

// Connected weighted graph: a random spanning tree plus random chords.
inline WeightedGraph random_connected_graph(std::size_t n, CounterRng& rng, double chord_prob = 0.4,
                                            double w_lo = 0.1, double w_hi = 2.0) {
  std::vector<WeightEntry> e;
  for (Vertex v = 1; v < n; ++v)
    e.push_back({static_cast<Vertex>(rng.below(v)), v, w_lo + (w_hi - w_lo) * rng.uniform()});
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 1; t < n; ++t)
      if (rng.uniform() < chord_prob) e.push_back({s, t, w_lo + (w_hi - w_lo) * rng.uniform()});
  return build_graph(n, e);
}

// Complete graph with weights 1 +- noise; small noise keeps ||A^0|| near 1/(n-1).
inline WeightedGraph noisy_complete_graph(std::size_t n, double noise, CounterRng& rng) {
  std::vector<WeightEntry> e;
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 1; t < n; ++t) e.push_back({s, t, 1.0 + noise * (2.0 * rng.uniform() - 1.0)});
  return build_graph(n, e);
}

// Mean-zero (in nu) random scalar field.
inline std::vector<double> random_mean_zero(const std::vector<double>& nu, CounterRng& rng) {
  std::vector<double> f(nu.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = rng.normal();
    mean += nu[i] * f[i];
  }
  for (double& x : f) x -= mean;
  return f;
}

// Direct evaluation of (sum_v nu(v) |f(v)|^p)^(1/p) and of the gradient norm
// (sum_{s,t} w(s,t)/D |f(s) - f(t)|^p)^(1/p), independent of the library's
// cached measures.
inline double direct_lp(const WeightedGraph& g, const std::vector<double>& f, double p) {
  double s = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) s += g.degree(v) / g.total_weight() * std::pow(std::abs(f[v]), p);
  return std::pow(s, 1.0 / p);
}

inline double direct_grad(const WeightedGraph& g, const std::vector<double>& f, double p) {
  double s = 0.0;
  for (const auto& e : g.edges()) {
    const double term = e.w / g.total_weight() * std::pow(std::abs(f[e.s] - f[e.t]), p);
    s += e.s == e.t ? term : 2.0 * term;
  }
  return std::pow(s, 1.0 / p);
}

}  // namespace zsl::testing
