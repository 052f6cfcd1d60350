#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "zsl/graph.hpp"
#include "zsl/spectral.hpp"

namespace zsl {

// pi_2 = 1/sqrt(2 - 2 mu_2) for scalar (or Hilbert-valued) functions.
// Throws Disconnected.
double poincare2_closed_form(const SpectralReport& report);

struct PoincareOptions {
  int max_iter = 5000;
  double rel_tol = 1e-10;  // stop once ten steps improve the ratio by less
  // Attach the analytic upper bound (needs a dense eigensolve).
  bool upper_bound = true;
  // Extra starting point ascended before the random restarts. Constant
  // fields are skipped.
  std::optional<VertexField> initial;
};

struct PoincareEstimate {
  double p = 2.0;
  std::size_t dim = 1;
  // Best ratio found; every evaluated f certifies pi >= this value.
  double lower_estimate = 0.0;
  VertexField witness;
  int restarts_used = 0;
  int iterations = 0;
  std::optional<double> upper_bound;
};

// R(f) = inf_x ||f - x||_{L^p(nu; l^p_k)} / ||grad f||_{L^p(P; l^p_k)}.
// The infimum splits into one 1-D convex problem per coordinate.
double poincare_ratio(const WeightedGraph& g, const VertexField& f, double p);

// Same ratio with the infimum taken over functions constant on each part
// (`part[v]` in {0, 1}).
double bipartite_poincare_ratio(const WeightedGraph& g, const std::vector<int>& part,
                                const VertexField& f, double p);

// Lower estimate of pi_{p,G}(l^p_k) by preconditioned gradient ascent on R
// with random restarts. Restart r draws its start from hash_seed({seed, r}).
// Throws Disconnected, BadParameter.
PoincareEstimate poincare_estimate(const WeightedGraph& g, double p, std::size_t dim, int restarts,
                                   std::uint64_t seed, const PoincareOptions& options = {});

// Bipartite variant. Throws NotBipartite when `part` is not a proper
// two-colouring of a connected graph.
PoincareEstimate bipartite_poincare_estimate(const WeightedGraph& g, const std::vector<int>& part,
                                             double p, std::size_t dim, int restarts,
                                             std::uint64_t seed,
                                             const PoincareOptions& options = {});

// Function-level constant for mean-zero f when ||A^0|| = gap:
//   (1 + 2^(2-p))^(-1/p) (1 - 2^(1-2/p) gap^(2/p))^(-1), for p >= 2.
// Empty when the second factor's base is not positive.
std::optional<double> lp_poincare_upper(double p, double gap);

}  // namespace zsl
