#pragma once

#include <cstddef>
#include <cstdint>

#include "zsl/graph.hpp"

namespace zsl {

struct ErdosRenyiParams {
  std::size_t m = 1;
  double rho = 0.0;
  std::uint64_t seed = 0;
};

// G(m, rho): pair {s, t}, s < t, in row-major order i consumes draw i of
// the seed's stream and is present when that uniform is below rho.
// Throws BadParameter.
WeightedGraph sample_er(const ErdosRenyiParams& params);

struct DegreeStats {
  double min_deg = 0.0;
  double max_deg = 0.0;
  double mean_deg = 0.0;
  double l1_dev_expected = 0.0;  // sum |d(i) - (m-1) rho| / (m (m-1) rho)
  double l1_dev_mean = 0.0;      // sum |d(i) - mean| / (m mean)
};

// Throws BadParameter when (m-1) rho or the mean degree is zero.
DegreeStats degree_stats(const WeightedGraph& g, double rho);

struct ErGapTrial {
  bool connected = false;
  double gap = 1.0;  // 1 for disconnected samples
  double scaled_gap = 0.0;  // gap * sqrt(m rho)
};

ErGapTrial er_gap_trial(const WeightedGraph& g, double rho);
ErGapTrial er_gap_trial(const ErdosRenyiParams& params);

}  // namespace zsl
