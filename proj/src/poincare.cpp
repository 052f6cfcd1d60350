#include "zsl/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "zsl/error.hpp"
#include "zsl/power.hpp"
#include "zsl/rng.hpp"

namespace zsl {

double lp_deviation(std::span<const double> weights, std::span<const double> values, double x,
                    double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * abs_pow(values[i] - x, p);
  return s;
}

double lp_center(std::span<const double> weights, std::span<const double> values, double p,
                 double tol) {
  if (values.empty()) return 0.0;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi - lo <= tol) return 0.5 * (lo + hi);
  if (p == 2.0) {
    double s = 0.0, w = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      s += weights[i] * values[i];
      w += weights[i];
    }
    return std::clamp(s / w, lo, hi);
  }
  // Bisection on the sign of the derivative, which is increasing in x and
  // keeps full precision where the objective itself is flat.
  auto slope = [&](double x) {
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) s += weights[i] * signed_pow(x - values[i], p - 1.0);
    return s;
  };
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double s = slope(mid);
    if (s == 0.0) return mid;
    (s < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double poincare2_closed_form(const SpectralReport& report) {
  if (!report.connected) throw Error(Errc::Disconnected, "pi_2 is infinite on a disconnected graph");
  if (report.eigenvalues.size() < 2) throw Error(Errc::BadParameter, "need at least two vertices");
  return 1.0 / std::sqrt(2.0 - 2.0 * report.mu2());
}

std::optional<double> lp_poincare_upper(double p, double gap) {
  if (p < 2.0) return std::nullopt;
  const double base = 1.0 - std::pow(2.0, 1.0 - 2.0 / p) * std::pow(gap, 2.0 / p);
  if (base <= 0.0) return std::nullopt;
  return std::pow(1.0 + std::pow(2.0, 2.0 - p), -1.0 / p) / base;
}

namespace {

// Cached measures and part structure for repeated ratio evaluations.
class RatioProblem {
 public:
  RatioProblem(const WeightedGraph& g, double p, std::size_t dim, std::vector<int> part)
      : g_(g), p_(p), dim_(dim), rw_(measures(g)), part_(std::move(part)) {
    const std::size_t n = g.vertex_count();
    if (part_.empty()) part_.assign(n, 0);
    nparts_ = static_cast<std::size_t>(*std::max_element(part_.begin(), part_.end())) + 1;
    members_.resize(nparts_);
    for (Vertex v = 0; v < n; ++v) members_[static_cast<std::size_t>(part_[v])].push_back(v);
    for (auto& m : members_) {
      std::vector<double> w;
      for (Vertex v : m) w.push_back(rw_.nu[v]);
      member_nu_.push_back(std::move(w));
    }
  }

  struct Eval {
    double num = 0.0;  // numerator^p
    double den = 0.0;  // denominator^p
    double ratio = 0.0;
    std::vector<double> centers;  // part-major, dim per part
  };

  Eval evaluate(const VertexField& f) const {
    Eval e;
    e.centers.assign(nparts_ * dim_, 0.0);
    std::vector<double> col;
    for (std::size_t c = 0; c < nparts_; ++c) {
      const auto& m = members_[c];
      col.resize(m.size());
      for (std::size_t j = 0; j < dim_; ++j) {
        for (std::size_t i = 0; i < m.size(); ++i) col[i] = f.at(m[i], j);
        const double x = lp_center(member_nu_[c], col, p_);
        e.centers[c * dim_ + j] = x;
        e.num += lp_deviation(member_nu_[c], col, x, p_);
      }
    }
    std::size_t idx = 0;
    for (Vertex s = 0; s < g_.vertex_count(); ++s) {
      for (Vertex t : g_.neighbors(s)) {
        const double prob = rw_.edge_prob[idx++];
        double acc = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) acc += abs_pow(f.at(t, j) - f.at(s, j), p_);
        e.den += prob * acc;
      }
    }
    e.ratio = e.den > 0.0 ? std::pow(e.num / e.den, 1.0 / p_) : 0.0;
    return e;
  }

  // Gradient of log R in the L^2(nu) geometry (Euclidean gradient / nu).
  VertexField gradient(const VertexField& f, const Eval& e) const {
    const std::size_t n = g_.vertex_count();
    VertexField grad{dim_, std::vector<double>(n * dim_, 0.0)};
    for (Vertex u = 0; u < n; ++u) {
      const std::size_t c = static_cast<std::size_t>(part_[u]);
      for (std::size_t j = 0; j < dim_; ++j)
        grad.at(u, j) = signed_pow(f.at(u, j) - e.centers[c * dim_ + j], p_ - 1.0) / e.num;
    }
    std::size_t idx = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex t : g_.neighbors(u)) {
        const double prob = rw_.edge_prob[idx++];
        for (std::size_t j = 0; j < dim_; ++j)
          grad.at(u, j) -= 2.0 * prob / rw_.nu[u] * signed_pow(f.at(u, j) - f.at(t, j), p_ - 1.0) /
                           e.den;
      }
    }
    return grad;
  }

  // Remove the nu-mean of every coordinate and scale to unit L^p(nu) norm.
  bool normalize(VertexField& f) const {
    const std::size_t n = g_.vertex_count();
    for (std::size_t j = 0; j < dim_; ++j) {
      double mean = 0.0;
      for (Vertex v = 0; v < n; ++v) mean += rw_.nu[v] * f.at(v, j);
      for (Vertex v = 0; v < n; ++v) f.at(v, j) -= mean;
    }
    double norm = 0.0;
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t j = 0; j < dim_; ++j) norm += rw_.nu[v] * abs_pow(f.at(v, j), p_);
    norm = std::pow(norm, 1.0 / p_);
    if (!(norm > 0.0) || !std::isfinite(norm)) return false;
    for (double& x : f.values) x /= norm;
    return true;
  }

  std::size_t vertex_count() const { return g_.vertex_count(); }
  std::size_t dim() const { return dim_; }
  double nu(std::size_t v) const { return rw_.nu[v]; }

 private:
  const WeightedGraph& g_;
  double p_;
  std::size_t dim_;
  RandomWalkMeasures rw_;
  std::vector<int> part_;
  std::size_t nparts_ = 1;
  std::vector<std::vector<Vertex>> members_;
  std::vector<std::vector<double>> member_nu_;
};

void check_parameters(const WeightedGraph& g, double p, std::size_t dim) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(Errc::BadParameter, "p must exceed 1");
  if (dim == 0) throw Error(Errc::BadParameter, "target dimension must be positive");
  if (g.vertex_count() < 2) throw Error(Errc::BadParameter, "need at least two vertices");
  if (g.has_isolated() || !is_connected(g))
    throw Error(Errc::Disconnected, "Poincare constant requires a connected graph");
}

PoincareEstimate ascend(const RatioProblem& problem, double p, int restarts, std::uint64_t seed,
                        const PoincareOptions& options) {
  if (restarts < 1) throw Error(Errc::BadParameter, "need at least one restart");
  const std::size_t n = problem.vertex_count();
  const std::size_t dim = problem.dim();
  PoincareEstimate best;
  best.p = p;
  best.dim = dim;
  best.lower_estimate = -1.0;

  if (options.initial && options.initial->values.size() != n * dim)
    throw Error(Errc::ShapeMismatch, "initial field does not match vertex count");
  // Restart -1 is the caller's warm start, when there is one.
  for (int r = options.initial ? -1 : 0; r < restarts; ++r) {
    VertexField f{dim, std::vector<double>(n * dim)};
    if (r < 0) {
      f.values = options.initial->values;
      if (!problem.normalize(f)) continue;
    } else {
      CounterRng rng(hash_seed({seed, static_cast<std::uint64_t>(r)}));
      do {
        for (double& x : f.values) x = rng.normal();
      } while (!problem.normalize(f));
    }
    auto cur = problem.evaluate(f);
    double step = 1.0;
    VertexField prev_f, prev_grad;
    std::vector<double> history{cur.ratio};
    int it = 0;
    for (; it < options.max_iter; ++it) {
      if (!(cur.num > 0.0) || !(cur.den > 0.0)) break;
      auto grad = problem.gradient(f, cur);
      if (!prev_f.values.empty()) {
        // Barzilai-Borwein step in the L^2(nu) metric; the line search below
        // keeps the ascent monotone.
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < f.values.size(); ++i) {
          const double w = problem.nu(i / dim);
          const double s = f.values[i] - prev_f.values[i];
          ss += w * s * s;
          sy += w * s * (grad.values[i] - prev_grad.values[i]);
        }
        step = sy < 0.0 ? std::clamp(ss / -sy, 1e-12, 1e8) : std::min(step * 2.0, 1e8);
      }
      bool accepted = false;
      VertexField trial;
      RatioProblem::Eval next;
      for (int ls = 0; ls < 60; ++ls) {
        trial = f;
        for (std::size_t i = 0; i < trial.values.size(); ++i) trial.values[i] += step * grad.values[i];
        if (problem.normalize(trial)) {
          next = problem.evaluate(trial);
          if (next.ratio > cur.ratio) {
            accepted = true;
            break;
          }
        }
        step *= 0.5;
      }
      if (!accepted) break;
      prev_f = std::move(f);
      prev_grad = std::move(grad);
      f = std::move(trial);
      cur = std::move(next);
      history.push_back(cur.ratio);
      constexpr std::size_t kWindow = 10;
      if (history.size() > kWindow &&
          cur.ratio - history[history.size() - 1 - kWindow] < options.rel_tol * cur.ratio)
        break;
    }
    best.iterations += it;
    ++best.restarts_used;
    if (cur.ratio > best.lower_estimate) {
      best.lower_estimate = cur.ratio;
      best.witness = f;
    }
  }
  return best;
}

}  // namespace

double poincare_ratio(const WeightedGraph& g, const VertexField& f, double p) {
  check_parameters(g, p, f.dim);
  if (f.values.size() != g.vertex_count() * f.dim)
    throw Error(Errc::ShapeMismatch, "field does not match vertex count");
  return RatioProblem(g, p, f.dim, {}).evaluate(f).ratio;
}

namespace {
void check_partition(const WeightedGraph& g, const std::vector<int>& part) {
  if (part.size() != g.vertex_count()) throw Error(Errc::NotBipartite, "partition size mismatch");
  bool seen[2] = {false, false};
  for (int c : part) {
    if (c != 0 && c != 1) throw Error(Errc::NotBipartite, "partition labels must be 0 or 1");
    seen[c] = true;
  }
  if (!seen[0] || !seen[1]) throw Error(Errc::NotBipartite, "both parts must be nonempty");
  for (Vertex s = 0; s < g.vertex_count(); ++s)
    for (Vertex t : g.neighbors(s))
      if (part[s] == part[t])
        throw Error(Errc::NotBipartite,
                    "edge (" + std::to_string(s) + "," + std::to_string(t) + ") inside a part");
}
}  // namespace

double bipartite_poincare_ratio(const WeightedGraph& g, const std::vector<int>& part,
                                const VertexField& f, double p) {
  check_parameters(g, p, f.dim);
  check_partition(g, part);
  if (f.values.size() != g.vertex_count() * f.dim)
    throw Error(Errc::ShapeMismatch, "field does not match vertex count");
  return RatioProblem(g, p, f.dim, part).evaluate(f).ratio;
}

PoincareEstimate poincare_estimate(const WeightedGraph& g, double p, std::size_t dim, int restarts,
                                   std::uint64_t seed, const PoincareOptions& options) {
  check_parameters(g, p, dim);
  RatioProblem problem(g, p, dim, {});
  auto est = ascend(problem, p, restarts, seed, options);
  if (options.upper_bound) {
    const auto report = spectral_report(g);
    std::optional<double> ub;
    if (p == 2.0) ub = poincare2_closed_form(report);
    if (auto b = lp_poincare_upper(p, report.restricted_norm)) ub = ub ? std::min(*ub, *b) : *b;
    est.upper_bound = ub;
  }
  return est;
}

PoincareEstimate bipartite_poincare_estimate(const WeightedGraph& g, const std::vector<int>& part,
                                             double p, std::size_t dim, int restarts,
                                             std::uint64_t seed, const PoincareOptions& options) {
  check_parameters(g, p, dim);
  check_partition(g, part);
  RatioProblem problem(g, p, dim, part);
  return ascend(problem, p, restarts, seed, options);
}

}  // namespace zsl
