#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zsl/graph.hpp"

namespace zsl {

// (Delta_p f)(s) = (1/d(s)) sum_t omega(s,t) {f(s) - f(t)}^(p-1).
// Throws BadParameter (p <= 1), ShapeMismatch, IsolatedVertex.
std::vector<double> p_laplacian_apply(const WeightedGraph& g, std::span<const double> f, double p);

struct PLaplacianReport {
  double p = 2.0;
  double poincare_lower = 0.0;   // the estimate the upper bound is built from
  double lambda_1p_upper = 0.0;  // 1 / (2 pi^p)
  // (1 - 2^(1-2/p) gap^(2/p))^p (1/2 + 2^(1-p)), or 0 without gap data or
  // when the base is not positive.
  double theorem37_lower = 0.0;
  std::optional<double> gap;
};

// Lower bound on lambda_{1,p} from the spectral gap, p >= 2.
double lambda1p_lower_from_gap(double p, double gap);

// When `gap` is given it must agree with ||A^0|| of g to 1e-9 (BadParameter).
// Throws Disconnected.
PLaplacianReport lambda1p_report(const WeightedGraph& g, double p, int restarts,
                                 std::uint64_t seed, std::optional<double> gap = std::nullopt);

}  // namespace zsl
