#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "zsl/graph.hpp"

namespace zsl {

// (sum_v nu(v) ||f(v)||_r^p)^(1/p), where ||.||_r is the l^r norm on the
// coordinates of each vertex.
double lp_norm(std::span<const double> nu, const VertexField& f, double p, double r = 2.0);

// Mazur map f -> {f}^(p/q), {x}^a = ||x||_r^(a-1) x, applied vertexwise.
// Transfers ||f||_{L^p}^p to ||M f||_{L^q}^q for the same inner norm r.
VertexField mazur_map(const VertexField& f, double p, double q, double r = 2.0);

struct MatousekScan {
  double pi_p = 0.0;
  double pi_q = 0.0;
  double ratio = 0.0;  // pi_p / pi_q^max(q/p, 1)
};

// Measured proxy for the comparison constant between pi_p and pi_q.
// `samples` is the restart count for each estimate. Throws Disconnected.
MatousekScan matousek_ratio_scan(const WeightedGraph& g, double p, double q, int samples,
                                 std::uint64_t seed);

struct MarkovNormBounds {
  double gap = 0.0;    // ||A^0|| on L^2
  double upper = 0.0;  // 2^(1-2/p) gap^(2/p)
  double lower = 0.0;  // best sampled ||A f|| / ||f|| over mean-zero f
};

// Sandwich for ||A||_{B(L^p_0(V, nu; l^p_k))}, p >= 2. The lower side
// starts `samples` random mean-zero fields and refines each by the nonlinear
// power iteration f <- psi_q(A psi_p(A f)).
// Throws Disconnected, BadParameter.
MarkovNormBounds markov_lp_norm_bounds(const WeightedGraph& g, double p, std::size_t k, int samples,
                                       std::uint64_t seed, int iterations = 200);

struct Theorem32Constant {
  double poincare_upper = 0.0;  // (1 + C)^(-1/p) (1 - gap)^(-1)
  double delta = 0.0;           // 1 - poincare_upper
};

inline double default_convexity_constant(double p) { return std::pow(2.0, 2.0 - p); }

// Throws GapTooLarge unless (1 + C)^(1/p) (1 - gap) > 1.
Theorem32Constant theorem32_constant(double p, double convexity_c, double gap);

}  // namespace zsl
