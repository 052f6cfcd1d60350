#include "zsl/p_laplacian.hpp"

#include <cmath>
#include <string>

#include "zsl/error.hpp"
#include "zsl/poincare.hpp"
#include "zsl/power.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

std::vector<double> p_laplacian_apply(const WeightedGraph& g, std::span<const double> f, double p) {
  if (!(p > 1.0)) throw Error(Errc::BadParameter, "p must exceed 1");
  const std::size_t n = g.vertex_count();
  if (f.size() != n) throw Error(Errc::ShapeMismatch, "function length differs from vertex count");
  std::vector<double> out(n, 0.0);
  for (Vertex s = 0; s < n; ++s) {
    if (g.degree(s) <= 0.0)
      throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(s) + " has degree 0");
    auto nb = g.neighbors(s);
    auto w = g.weights(s);
    double acc = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) acc += w[i] * signed_pow(f[s] - f[nb[i]], p - 1.0);
    out[s] = acc / g.degree(s);
  }
  return out;
}

double lambda1p_lower_from_gap(double p, double gap) {
  if (!(p >= 2.0)) throw Error(Errc::BadParameter, "the gap bound needs p >= 2");
  const double base = 1.0 - std::pow(2.0, 1.0 - 2.0 / p) * std::pow(gap, 2.0 / p);
  if (base <= 0.0) return 0.0;
  return std::pow(base, p) * (0.5 + std::pow(2.0, 1.0 - p));
}

PLaplacianReport lambda1p_report(const WeightedGraph& g, double p, int restarts,
                                 std::uint64_t seed, std::optional<double> gap) {
  PoincareOptions opts;
  opts.upper_bound = false;
  const auto est = poincare_estimate(g, p, 1, restarts, seed, opts);
  PLaplacianReport r;
  r.p = p;
  r.poincare_lower = est.lower_estimate;
  r.lambda_1p_upper = 1.0 / (2.0 * std::pow(est.lower_estimate, p));
  if (gap) {
    const double actual = restricted_norm(g);
    if (std::abs(actual - *gap) > 1e-9)
      throw Error(Errc::BadParameter, "supplied gap " + std::to_string(*gap) +
                                          " differs from the graph's " + std::to_string(actual));
    r.gap = gap;
    if (p >= 2.0) r.theorem37_lower = lambda1p_lower_from_gap(p, *gap);
  }
  return r;
}

}  // namespace zsl
