#include "zsl/erdos_renyi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "zsl/error.hpp"
#include "zsl/rng.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

WeightedGraph sample_er(const ErdosRenyiParams& params) {
  if (params.m == 0) throw Error(Errc::BadParameter, "m must be at least 1");
  if (!(params.rho >= 0.0 && params.rho <= 1.0))
    throw Error(Errc::BadParameter, "rho must lie in [0, 1]");
  std::vector<WeightEntry> edges;
  const std::size_t m = params.m;
  edges.reserve(static_cast<std::size_t>(params.rho * static_cast<double>(m * (m - 1) / 2)) + 16);
  std::uint64_t i = 0;
  for (Vertex s = 0; s < m; ++s)
    for (Vertex t = s + 1; t < m; ++t, ++i)
      if (CounterRng::uniform_at(params.seed, i) < params.rho) edges.push_back({s, t, 1.0});
  return build_graph(m, edges);
}

DegreeStats degree_stats(const WeightedGraph& g, double rho) {
  const std::size_t m = g.vertex_count();
  const double expected = static_cast<double>(m - 1) * rho;
  if (m == 0 || !(expected > 0.0))
    throw Error(Errc::BadParameter, "(m-1) rho must be positive");
  const auto& d = g.degrees();
  DegreeStats s;
  auto [lo, hi] = std::minmax_element(d.begin(), d.end());
  s.min_deg = *lo;
  s.max_deg = *hi;
  double sum = 0.0;
  for (double x : d) sum += x;
  s.mean_deg = sum / static_cast<double>(m);
  if (!(s.mean_deg > 0.0)) throw Error(Errc::BadParameter, "graph has no edges");
  double dev_e = 0.0, dev_m = 0.0;
  for (double x : d) {
    dev_e += std::abs(x - expected);
    dev_m += std::abs(x - s.mean_deg);
  }
  s.l1_dev_expected = dev_e / (static_cast<double>(m) * expected);
  s.l1_dev_mean = dev_m / (static_cast<double>(m) * s.mean_deg);
  return s;
}

ErGapTrial er_gap_trial(const WeightedGraph& g, double rho) {
  ErGapTrial t;
  if (g.isolated_count() < g.vertex_count()) {
    const auto r = spectral_report(g);
    t.connected = r.connected;
    t.gap = r.restricted_norm;
  }
  t.scaled_gap = t.gap * std::sqrt(static_cast<double>(g.vertex_count()) * rho);
  return t;
}

ErGapTrial er_gap_trial(const ErdosRenyiParams& params) {
  return er_gap_trial(sample_er(params), params.rho);
}

}  // namespace zsl
