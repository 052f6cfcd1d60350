#include "zsl/lp_bounds.hpp"

#include <algorithm>
#include <cmath>

#include "zsl/error.hpp"
#include "zsl/poincare.hpp"
#include "zsl/power.hpp"
#include "zsl/rng.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

namespace {

double row_norm(const VertexField& f, std::size_t v, double r) {
  double s = 0.0;
  for (std::size_t j = 0; j < f.dim; ++j) s += abs_pow(f.at(v, j), r);
  return std::pow(s, 1.0 / r);
}

}  // namespace

double lp_norm(std::span<const double> nu, const VertexField& f, double p, double r) {
  const std::size_t n = f.vertex_count();
  if (nu.size() != n) throw Error(Errc::ShapeMismatch, "measure length differs from field");
  double s = 0.0;
  for (std::size_t v = 0; v < n; ++v) s += nu[v] * abs_pow(row_norm(f, v, r), p);
  return std::pow(s, 1.0 / p);
}

VertexField mazur_map(const VertexField& f, double p, double q, double r) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw Error(Errc::BadParameter, "Mazur exponents must be >= 1");
  VertexField out = f;
  const double a = p / q;
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    const double nrm = row_norm(f, v, r);
    const double scale = nrm > 0.0 ? std::pow(nrm, a - 1.0) : 0.0;
    for (std::size_t j = 0; j < f.dim; ++j) out.at(v, j) = scale * f.at(v, j);
  }
  return out;
}

MatousekScan matousek_ratio_scan(const WeightedGraph& g, double p, double q, int samples,
                                 std::uint64_t seed) {
  if (!(p > 1.0) || !(q > 1.0)) throw Error(Errc::BadParameter, "p and q must exceed 1");
  PoincareOptions opts;
  opts.upper_bound = false;
  MatousekScan s;
  s.pi_p = poincare_estimate(g, p, 1, samples, seed, opts).lower_estimate;
  s.pi_q = p == q ? s.pi_p : poincare_estimate(g, q, 1, samples, seed, opts).lower_estimate;
  s.ratio = s.pi_p / std::pow(s.pi_q, std::max(q / p, 1.0));
  return s;
}

MarkovNormBounds markov_lp_norm_bounds(const WeightedGraph& g, double p, std::size_t k, int samples,
                                       std::uint64_t seed, int iterations) {
  if (!(p >= 2.0)) throw Error(Errc::BadParameter, "norm bounds need p >= 2");
  if (k == 0 || samples < 1) throw Error(Errc::BadParameter, "need k >= 1 and samples >= 1");
  if (g.has_isolated() || !is_connected(g))
    throw Error(Errc::Disconnected, "operator norm bounds need a connected graph");
  const std::size_t n = g.vertex_count();
  const auto nu = measures(g).nu;
  const double q = p / (p - 1.0);

  MarkovNormBounds b;
  b.gap = restricted_norm(g);
  b.upper = std::pow(2.0, 1.0 - 2.0 / p) * std::pow(b.gap, 2.0 / p);

  auto center = [&](VertexField& f) {
    for (std::size_t j = 0; j < k; ++j) {
      double mean = 0.0;
      for (std::size_t v = 0; v < n; ++v) mean += nu[v] * f.at(v, j);
      for (std::size_t v = 0; v < n; ++v) f.at(v, j) -= mean;
    }
  };
  // A is taken on each coordinate, so the inner norm is l^p as well.
  auto ratio = [&](const VertexField& f, const VertexField& af) {
    const double den = lp_norm(nu, f, p, p);
    return den > 0.0 ? lp_norm(nu, af, p, p) / den : 0.0;
  };

  for (int s = 0; s < samples; ++s) {
    CounterRng rng(hash_seed({seed, static_cast<std::uint64_t>(s)}));
    VertexField f{k, std::vector<double>(n * k)};
    for (double& x : f.values) x = rng.normal();
    center(f);
    for (int it = 0; it <= iterations; ++it) {
      VertexField af = markov_apply(g, f);
      const double r = ratio(f, af);
      b.lower = std::max(b.lower, r);
      if (it == iterations) break;
      for (double& x : af.values) x = signed_pow(x, p - 1.0);
      VertexField next = markov_apply(g, af);
      for (double& x : next.values) x = signed_pow(x, q - 1.0);
      center(next);
      const double nrm = lp_norm(nu, next, p, p);
      if (!(nrm > 0.0)) break;
      for (double& x : next.values) x /= nrm;
      f = std::move(next);
    }
  }
  return b;
}

Theorem32Constant theorem32_constant(double p, double convexity_c, double gap) {
  if (!(p > 1.0)) throw Error(Errc::BadParameter, "p must exceed 1");
  if (!(convexity_c > 0.0)) throw Error(Errc::BadParameter, "convexity constant must be positive");
  if (!(gap >= 0.0)) throw Error(Errc::BadParameter, "gap must be nonnegative");
  const double lead = std::pow(1.0 + convexity_c, 1.0 / p);
  if (!(lead * (1.0 - gap) > 1.0))
    throw Error(Errc::GapTooLarge, "(1 + C)^(1/p) (1 - gap) must exceed 1");
  Theorem32Constant c;
  c.poincare_upper = 1.0 / (lead * (1.0 - gap));
  c.delta = 1.0 - c.poincare_upper;
  return c;
}

}  // namespace zsl
