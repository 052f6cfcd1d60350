#include "zsl/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include "zsl/error.hpp"

namespace zsl {

double WeightedGraph::weight(Vertex s, Vertex t) const noexcept {
  auto nb = neighbors(s);
  auto it = std::lower_bound(nb.begin(), nb.end(), t);
  if (it == nb.end() || *it != t) return 0.0;
  return weight_[offset_[s] + static_cast<std::size_t>(it - nb.begin())];
}

std::size_t WeightedGraph::isolated_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(degree_.begin(), degree_.end(), [](double d) { return d <= 0.0; }));
}

bool WeightedGraph::has_self_loops() const noexcept {
  for (Vertex s = 0; s < vertex_count(); ++s)
    if (weight(s, s) > 0.0) return true;
  return false;
}

std::vector<WeightEntry> WeightedGraph::edges() const {
  std::vector<WeightEntry> out;
  for (Vertex s = 0; s < vertex_count(); ++s) {
    auto nb = neighbors(s);
    auto w = weights(s);
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (nb[i] >= s) out.push_back({s, nb[i], w[i]});
  }
  return out;
}

std::vector<double> WeightedGraph::dense() const {
  const std::size_t n = vertex_count();
  std::vector<double> m(n * n, 0.0);
  for (Vertex s = 0; s < n; ++s) {
    auto nb = neighbors(s);
    auto w = weights(s);
    for (std::size_t i = 0; i < nb.size(); ++i) m[s * n + nb[i]] = w[i];
  }
  return m;
}

WeightedGraph build_graph(std::size_t n, std::span<const WeightEntry> entries) {
  if (n == 0) throw Error(Errc::BadParameter, "graph needs at least one vertex");
  std::vector<std::size_t> count(n + 1, 0);
  for (const auto& e : entries) {
    if (e.s >= n || e.t >= n)
      throw Error(Errc::IndexOutOfRange,
                  "entry (" + std::to_string(e.s) + "," + std::to_string(e.t) +
                      ") outside vertex range " + std::to_string(n));
    if (!(e.w >= 0.0) || !std::isfinite(e.w))
      throw Error(Errc::NegativeWeight, "weight " + std::to_string(e.w) + " on (" +
                                            std::to_string(e.s) + "," + std::to_string(e.t) + ")");
    ++count[e.s + 1];
    if (e.s != e.t) ++count[e.t + 1];
  }
  std::partial_sum(count.begin(), count.end(), count.begin());

  std::vector<std::pair<Vertex, double>> slots(count[n]);
  std::vector<std::size_t> fill(count.begin(), count.end() - 1);
  for (const auto& e : entries) {
    slots[fill[e.s]++] = {e.t, e.w};
    if (e.s != e.t) slots[fill[e.t]++] = {e.s, e.w};
  }

  WeightedGraph g;
  g.offset_.assign(1, 0);
  g.offset_.reserve(n + 1);
  g.degree_.assign(n, 0.0);
  g.neighbor_.reserve(slots.size());
  g.weight_.reserve(slots.size());
  for (std::size_t s = 0; s < n; ++s) {
    auto first = slots.begin() + static_cast<std::ptrdiff_t>(count[s]);
    auto last = slots.begin() + static_cast<std::ptrdiff_t>(count[s + 1]);
    std::sort(first, last, [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto it = first; it != last;) {
      Vertex t = it->first;
      double w = 0.0;
      for (; it != last && it->first == t; ++it) w += it->second;
      if (w > 0.0) {
        g.neighbor_.push_back(t);
        g.weight_.push_back(w);
        g.degree_[s] += w;
      }
    }
    g.offset_.push_back(g.neighbor_.size());
  }
  g.total_ = std::accumulate(g.degree_.begin(), g.degree_.end(), 0.0);
  return g;
}

RandomWalkMeasures measures(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  for (Vertex s = 0; s < n; ++s)
    if (g.degree(s) <= 0.0)
      throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(s) + " has degree 0");
  RandomWalkMeasures m;
  m.nu.resize(n);
  m.edge_prob.reserve(g.nnz());
  const double total = g.total_weight();
  for (Vertex s = 0; s < n; ++s) {
    m.nu[s] = g.degree(s) / total;
    for (double w : g.weights(s)) m.edge_prob.push_back(w / total);
  }
  return m;
}

VertexField markov_apply(const WeightedGraph& g, const VertexField& f) {
  const std::size_t n = g.vertex_count();
  if (f.dim == 0 || f.values.size() != n * f.dim)
    throw Error(Errc::ShapeMismatch, "field does not match vertex count");
  VertexField out{f.dim, std::vector<double>(f.values.size(), 0.0)};
  for (Vertex s = 0; s < n; ++s) {
    const double d = g.degree(s);
    if (d <= 0.0) throw Error(Errc::IsolatedVertex, "vertex " + std::to_string(s) + " has degree 0");
    auto nb = g.neighbors(s);
    auto w = g.weights(s);
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = 0; j < f.dim; ++j) out.at(s, j) += w[i] * f.at(nb[i], j);
    for (std::size_t j = 0; j < f.dim; ++j) out.at(s, j) /= d;
  }
  return out;
}

std::vector<double> markov_apply(const WeightedGraph& g, std::span<const double> f) {
  VertexField in{1, std::vector<double>(f.begin(), f.end())};
  return markov_apply(g, in).values;
}

WeightedGraph graph_union(const WeightedGraph& g1, const WeightedGraph& g2) {
  if (g1.vertex_count() != g2.vertex_count())
    throw Error(Errc::SizeMismatch, "union of graphs on " + std::to_string(g1.vertex_count()) +
                                        " and " + std::to_string(g2.vertex_count()) + " vertices");
  auto e = g1.edges();
  auto e2 = g2.edges();
  e.insert(e.end(), e2.begin(), e2.end());
  return build_graph(g1.vertex_count(), e);
}

WeightedGraph scaled(const WeightedGraph& g, double c) {
  if (!(c > 0.0)) throw Error(Errc::BadParameter, "scale must be positive");
  auto e = g.edges();
  for (auto& x : e) x.w *= c;
  return build_graph(g.vertex_count(), e);
}

WeightedGraph drop_isolated(const WeightedGraph& g, std::vector<Vertex>* kept) {
  const std::size_t n = g.vertex_count();
  std::vector<Vertex> index(n, 0);
  std::vector<Vertex> keep;
  for (Vertex s = 0; s < n; ++s) {
    if (g.degree(s) > 0.0) {
      index[s] = static_cast<Vertex>(keep.size());
      keep.push_back(s);
    }
  }
  if (keep.empty()) throw Error(Errc::EmptyGraph, "every vertex is isolated");
  auto e = g.edges();
  for (auto& x : e) {
    x.s = index[x.s];
    x.t = index[x.t];
  }
  if (kept) *kept = keep;
  return build_graph(keep.size(), e);
}

bool is_connected(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Vertex s = stack.back();
    stack.pop_back();
    for (Vertex t : g.neighbors(s))
      if (!seen[t]) {
        seen[t] = 1;
        ++reached;
        stack.push_back(t);
      }
  }
  return reached == n;
}

std::vector<int> bipartition(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> colour(n, -1);
  for (Vertex root = 0; root < n; ++root) {
    if (colour[root] >= 0) continue;
    colour[root] = 0;
    std::queue<Vertex> q;
    q.push(root);
    while (!q.empty()) {
      Vertex s = q.front();
      q.pop();
      for (Vertex t : g.neighbors(s)) {
        if (colour[t] < 0) {
          colour[t] = 1 - colour[s];
          q.push(t);
        } else if (colour[t] == colour[s]) {
          return {};
        }
      }
    }
  }
  return colour;
}

WeightedGraph complete_graph(std::size_t n) {
  std::vector<WeightEntry> e;
  for (Vertex s = 0; s < n; ++s)
    for (Vertex t = s + 1; t < n; ++t) e.push_back({s, t, 1.0});
  return build_graph(n, e);
}

WeightedGraph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<WeightEntry> e;
  e.reserve(a * b);
  for (Vertex s = 0; s < a; ++s)
    for (Vertex t = 0; t < b; ++t) e.push_back({s, static_cast<Vertex>(a + t), 1.0});
  return build_graph(a + b, e);
}

WeightedGraph cycle_graph(std::size_t n) {
  std::vector<WeightEntry> e;
  for (Vertex s = 0; s < n; ++s) e.push_back({s, static_cast<Vertex>((s + 1) % n), 1.0});
  return build_graph(n, e);
}

WeightedGraph path_graph(std::size_t n) {
  std::vector<WeightEntry> e;
  for (Vertex s = 0; s + 1 < n; ++s) e.push_back({s, s + 1, 1.0});
  return build_graph(n, e);
}

WeightedGraph star_graph(std::size_t leaves) {
  std::vector<WeightEntry> e;
  for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i, 1.0});
  return build_graph(leaves + 1, e);
}

WeightedGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_header = false;
  std::vector<WeightEntry> entries;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (!have_header) {
      if (first != "n" || !(ls >> n) || n == 0)
        throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected header 'n <count>'");
      have_header = true;
      continue;
    }
    WeightEntry e{};
    std::istringstream es(line);
    long long s = 0, t = 0;
    if (!(es >> s >> t >> e.w) || s < 0 || t < 0)
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": expected 's t w'");
    std::string extra;
    if (es >> extra) throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": trailing tokens");
    e.s = static_cast<Vertex>(s);
    e.t = static_cast<Vertex>(t);
    entries.push_back(e);
  }
  if (!have_header) throw Error(Errc::ParseError, "missing header 'n <count>'");
  return build_graph(n, entries);
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.vertex_count() << '\n';
  char buf[64];
  for (const auto& e : g.edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << e.s << ' ' << e.t << ' ' << buf << '\n';
  }
}

}  // namespace zsl
