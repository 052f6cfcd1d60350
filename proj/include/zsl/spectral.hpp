#pragma once

#include <cstddef>
#include <vector>

#include "zsl/graph.hpp"

namespace zsl {

// Spectrum of the Markov operator A on L^2(V, nu).
struct SpectralReport {
  std::vector<double> eigenvalues;  // descending, mu_1 >= ... >= mu_n
  double restricted_norm = 1.0;     // ||A^0|| = max(|mu_2|, |mu_n|)
  bool connected = false;
  bool bipartite = false;
  std::size_t isolated_removed = 0;

  double mu2() const { return eigenvalues.size() > 1 ? eigenvalues[1] : 0.0; }
  double mu_min() const { return eigenvalues.empty() ? 0.0 : eigenvalues.back(); }
};

// Eigenvalues of the symmetrised matrix B(s,t) = omega(s,t)/sqrt(d(s) d(t)),
// which is similar to A. Zero-degree vertices are dropped first; if any were
// dropped the graph counts as disconnected and ||A^0|| is reported as 1.
// Throws EmptyGraph when every vertex is isolated.
SpectralReport spectral_report(const WeightedGraph& g);

// ||A^0|| of a graph; 1 for disconnected graphs or graphs with isolated vertices.
double restricted_norm(const WeightedGraph& g);

struct SymmetricEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major n x n when requested
};

// Dense symmetric eigendecomposition (LAPACK dsyevr) of a row-major matrix.
SymmetricEigen symmetric_eigen(std::vector<double> matrix, std::size_t n, bool want_vectors);

// Symmetrised Markov matrix B of a graph with no isolated vertices.
std::vector<double> symmetrized_markov(const WeightedGraph& g);

struct PerturbationCheck {
  double delta_prime = 0.0;  // max_s d2(s)/d1(s)
  double norm_base = 0.0;    // ||A^0_{w1}||
  double norm_union = 0.0;   // ||A^0_{w1+w2}||
  double lhs = 0.0;          // | norm_union - norm_base |
  bool holds = false;        // lhs <= delta_prime + 1e-12
};

// Perturbation bound for adding a graph whose degrees are dominated by
// delta' times those of the base. Throws IsolatedVertex on g1.
PerturbationCheck perturbation_bound_check(const WeightedGraph& g1, const WeightedGraph& g2);

struct UnionGapCheck {
  double delta = 0.0;     // L1 degree irregularity of both graphs
  double bound = 0.0;     // min(1, delta + (1 - delta) max(||A^0_1||, ||A^0_2||))
  double norm_sum = 0.0;  // ||A^0_{w1+w2}||
  double norm1 = 0.0;
  double norm2 = 0.0;
  bool holds = false;     // norm_sum <= bound + 1e-12
};

// sum_s |d_i(s) - D_i/|V|| / D_i, summed over the given degree sequences.
double degree_irregularity(const std::vector<const WeightedGraph*>& graphs);

// Union-of-graphs gap bound driven by L1 degree concentration.
// Throws IsolatedVertex, SizeMismatch.
UnionGapCheck union_gap_bound(const WeightedGraph& g1, const WeightedGraph& g2);

}  // namespace zsl
