#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zsl/graph.hpp"

namespace zsl {

using Edge = std::array<Vertex, 2>;
using Triangle = std::array<Vertex, 3>;

// Finite simplicial 2-complex; edges and triangles are stored sorted, with
// every edge of a triangle present.
struct SimplicialComplex2 {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<Triangle> triangles;

  // Connectivity of the 1-skeleton.
  bool is_connected() const;
};

// Downward closure of the given triangles and extra edges.
// Throws IndexOutOfRange, BadParameter (repeated vertex in a simplex).
SimplicialComplex2 make_complex(std::size_t n, std::vector<Triangle> triangles,
                                std::vector<Edge> extra_edges = {});

SimplicialComplex2 single_triangle();
// Vertices 0..5, antipodal pairs (0,1), (2,3), (4,5).
SimplicialComplex2 octahedron();

struct VertexLink {
  WeightedGraph graph;
  // Link vertex i is the edge {m, neighbors[i]}.
  std::vector<Vertex> neighbors;
};

// Link of m: vertices are the edges at m, omega(s, t) counts triangles
// with s and t among their faces. Throws UnknownVertex.
VertexLink link_of(const SimplicialComplex2& complex, Vertex m);

using Permutation = std::vector<Vertex>;

// Cycle notation such as "(0 1)(2 3)", with "()" or "id" for the identity.
// Throws ParseError.
Permutation parse_cycles(const std::string& text, std::size_t n);
std::string format_cycles(const Permutation& perm);

// Finite group of simplicial automorphisms of a complex, stored as its full
// list of permutations of the vertex set.
class FiniteAction {
 public:
  static FiniteAction trivial(std::size_t n);
  // Closure of the generators under composition. Throws InvalidAction when a
  // generator is not a permutation or does not preserve the simplices.
  static FiniteAction generated_by(const SimplicialComplex2& complex, std::vector<Permutation> generators);
  // Throws InvalidAction unless the list is a group of automorphisms.
  static FiniteAction from_elements(const SimplicialComplex2& complex, std::vector<Permutation> elements);

  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  // Smallest vertex of each orbit, ascending.
  const std::vector<Vertex>& representatives() const noexcept { return reps_; }
  Vertex representative(Vertex v) const { return orbit_rep_[v]; }
  std::size_t stabilizer_order(Vertex v) const { return stabilizer_[v]; }

 private:
  void index_orbits(std::size_t n);

  std::vector<Permutation> elements_;
  std::vector<Vertex> reps_;
  std::vector<Vertex> orbit_rep_;
  std::vector<std::size_t> stabilizer_;
};

// "v <n>" followed by "t i j k" lines (and optional "e i j" lines).
SimplicialComplex2 read_complex(std::istream& in);
SimplicialComplex2 read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const SimplicialComplex2& complex);

// One generator per line in cycle notation; the action is their closure.
FiniteAction read_action(std::istream& in, const SimplicialComplex2& complex);
FiniteAction read_action_file(const std::string& path, const SimplicialComplex2& complex);

}  // namespace zsl
