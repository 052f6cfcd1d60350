#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace zsl {

using Vertex = std::uint32_t;

struct WeightEntry {
  Vertex s;
  Vertex t;
  double w;
};

// Finite weighted graph (V, omega) with omega symmetric and nonnegative.
// Adjacency is stored in CSR form with both orientations of every edge;
// a self-loop omega(s,s) is stored once. Immutable after construction.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t vertex_count() const noexcept { return degree_.size(); }
  std::size_t nnz() const noexcept { return neighbor_.size(); }

  std::span<const Vertex> neighbors(Vertex s) const noexcept {
    return {neighbor_.data() + offset_[s], neighbor_.data() + offset_[s + 1]};
  }
  std::span<const double> weights(Vertex s) const noexcept {
    return {weight_.data() + offset_[s], weight_.data() + offset_[s + 1]};
  }

  double weight(Vertex s, Vertex t) const noexcept;
  double degree(Vertex s) const noexcept { return degree_[s]; }
  const std::vector<double>& degrees() const noexcept { return degree_; }
  // Sum over ordered pairs of omega(s,t), i.e. the sum of all degrees.
  double total_weight() const noexcept { return total_; }

  std::size_t isolated_count() const noexcept;
  bool has_isolated() const noexcept { return isolated_count() > 0; }
  bool has_self_loops() const noexcept;

  // Unordered edges with s <= t and omega > 0, sorted.
  std::vector<WeightEntry> edges() const;
  // Row-major n x n matrix of omega.
  std::vector<double> dense() const;

  friend WeightedGraph build_graph(std::size_t n, std::span<const WeightEntry> entries);

 private:
  std::vector<std::size_t> offset_{0};
  std::vector<Vertex> neighbor_;
  std::vector<double> weight_;
  std::vector<double> degree_;
  double total_ = 0.0;
};

// Applies the symmetric closure: (s,t,w) adds w to omega(s,t) and omega(t,s)
// (once for s == t). Duplicate entries for the same unordered pair are summed.
// Throws NegativeWeight, IndexOutOfRange.
WeightedGraph build_graph(std::size_t n, std::span<const WeightEntry> entries);

inline WeightedGraph build_graph(std::size_t n, std::initializer_list<WeightEntry> entries) {
  return build_graph(n, std::span<const WeightEntry>(entries.begin(), entries.size()));
}

struct RandomWalkMeasures {
  std::vector<double> nu;  // nu(s) = d(s) / sum_t d(t)
  // P(s,t) = omega(s,t) / total, aligned with the graph's CSR layout.
  std::vector<double> edge_prob;
};

// Throws IsolatedVertex when some degree is zero.
RandomWalkMeasures measures(const WeightedGraph& g);

// Vertex-indexed values with `dim` coordinates per vertex, row-major.
struct VertexField {
  std::size_t dim = 1;
  std::vector<double> values;

  std::size_t vertex_count() const noexcept { return dim == 0 ? 0 : values.size() / dim; }
  double& at(std::size_t v, std::size_t j) { return values[v * dim + j]; }
  double at(std::size_t v, std::size_t j) const { return values[v * dim + j]; }
};

// (A f)(s) = (1/d(s)) sum_t omega(s,t) f(t), coordinatewise.
// Throws IsolatedVertex, ShapeMismatch.
VertexField markov_apply(const WeightedGraph& g, const VertexField& f);
std::vector<double> markov_apply(const WeightedGraph& g, std::span<const double> f);

// Pointwise sum omega1 + omega2. Throws SizeMismatch.
WeightedGraph graph_union(const WeightedGraph& g1, const WeightedGraph& g2);

WeightedGraph scaled(const WeightedGraph& g, double c);

// Induced subgraph on the vertices with nonzero degree; `kept` receives the
// original index of each retained vertex.
WeightedGraph drop_isolated(const WeightedGraph& g, std::vector<Vertex>* kept = nullptr);

// Combinatorial checks on the support of omega.
bool is_connected(const WeightedGraph& g);
// Two-colouring of a connected graph; empty when not bipartite.
std::vector<int> bipartition(const WeightedGraph& g);

// Small named graphs used by tests, the CLI and the acceptance suite.
WeightedGraph complete_graph(std::size_t n);
WeightedGraph complete_bipartite(std::size_t a, std::size_t b);
WeightedGraph cycle_graph(std::size_t n);
WeightedGraph path_graph(std::size_t n);
WeightedGraph star_graph(std::size_t leaves);

// Text interchange: header "n <count>", then one "s t w" line per entry.
// Blank lines and '#' comments are ignored. Entries are accumulated with
// build_graph, so an asymmetric pair of lines is summed, not rejected.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const WeightedGraph& g);

}  // namespace zsl
