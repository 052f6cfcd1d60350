#include "zsl/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "zsl/error.hpp"

namespace zsl {

namespace {

template <std::size_t N>
std::array<Vertex, N> sorted(std::array<Vertex, N> a) {
  std::sort(a.begin(), a.end());
  return a;
}

template <std::size_t N>
void check_simplex(const std::array<Vertex, N>& s, std::size_t n) {
  for (std::size_t i = 0; i < N; ++i) {
    if (s[i] >= n)
      throw Error(Errc::IndexOutOfRange, "vertex " + std::to_string(s[i]) + " outside [0, " +
                                             std::to_string(n) + ")");
    for (std::size_t j = i + 1; j < N; ++j)
      if (s[i] == s[j]) throw Error(Errc::BadParameter, "simplex repeats a vertex");
  }
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool SimplicialComplex2::is_connected() const {
  if (vertex_count <= 1) return true;
  std::vector<WeightEntry> entries;
  for (const auto& e : edges) entries.push_back({e[0], e[1], 1.0});
  const WeightedGraph g = build_graph(vertex_count, entries);
  if (g.has_isolated()) return false;
  return zsl::is_connected(g);
}

SimplicialComplex2 make_complex(std::size_t n, std::vector<Triangle> triangles, std::vector<Edge> extra_edges) {
  if (n == 0) throw Error(Errc::BadParameter, "complex needs at least one vertex");
  SimplicialComplex2 c;
  c.vertex_count = n;
  for (auto& t : triangles) {
    check_simplex(t, n);
    t = sorted(t);
    c.edges.push_back({t[0], t[1]});
    c.edges.push_back({t[0], t[2]});
    c.edges.push_back({t[1], t[2]});
  }
  for (auto& e : extra_edges) {
    check_simplex(e, n);
    c.edges.push_back(sorted(e));
  }
  sort_unique(triangles);
  sort_unique(c.edges);
  c.triangles = std::move(triangles);
  return c;
}

SimplicialComplex2 single_triangle() { return make_complex(3, {{0, 1, 2}}); }

SimplicialComplex2 octahedron() {
  std::vector<Triangle> tris;
  for (Vertex a : {0u, 1u})
    for (Vertex b : {2u, 3u})
      for (Vertex c : {4u, 5u}) tris.push_back({a, b, c});
  return make_complex(6, tris);
}

VertexLink link_of(const SimplicialComplex2& complex, Vertex m) {
  if (m >= complex.vertex_count)
    throw Error(Errc::UnknownVertex, "vertex " + std::to_string(m) + " is not in the complex");
  VertexLink link;
  for (const auto& e : complex.edges) {
    if (e[0] == m) link.neighbors.push_back(e[1]);
    else if (e[1] == m) link.neighbors.push_back(e[0]);
  }
  std::sort(link.neighbors.begin(), link.neighbors.end());
  auto index = [&](Vertex v) {
    return static_cast<Vertex>(std::lower_bound(link.neighbors.begin(), link.neighbors.end(), v) -
                               link.neighbors.begin());
  };
  std::vector<WeightEntry> entries;
  for (const auto& t : complex.triangles) {
    if (t[0] != m && t[1] != m && t[2] != m) continue;
    Vertex other[2];
    int k = 0;
    for (Vertex v : t)
      if (v != m) other[k++] = v;
    entries.push_back({index(other[0]), index(other[1]), 1.0});
  }
  if (link.neighbors.empty()) {
    link.graph = WeightedGraph{};
  } else {
    link.graph = build_graph(link.neighbors.size(), entries);
  }
  return link;
}

Permutation parse_cycles(const std::string& text, std::size_t n) {
  Permutation perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<Vertex>(i);
  std::string trimmed;
  for (char c : text)
    if (c != '\r') trimmed.push_back(c == ',' ? ' ' : c);
  const auto first = trimmed.find_first_not_of(" \t");
  if (first == std::string::npos || trimmed.substr(first, 2) == "id") {
    if (first != std::string::npos && trimmed.find_first_not_of(" \t", first + 2) != std::string::npos)
      throw Error(Errc::ParseError, "unexpected text after 'id'");
    return perm;
  }
  std::vector<bool> seen(n, false);
  std::size_t pos = first;
  while (pos < trimmed.size()) {
    if (trimmed[pos] == ' ' || trimmed[pos] == '\t') {
      ++pos;
      continue;
    }
    if (trimmed[pos] != '(') throw Error(Errc::ParseError, "expected '(' in '" + text + "'");
    const auto close = trimmed.find(')', pos);
    if (close == std::string::npos) throw Error(Errc::ParseError, "unclosed cycle in '" + text + "'");
    std::istringstream cs(trimmed.substr(pos + 1, close - pos - 1));
    std::vector<Vertex> cyc;
    for (std::string tok; cs >> tok;) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::ParseError, "bad vertex '" + tok + "'");
      const unsigned long v = std::stoul(tok);
      if (v >= n) throw Error(Errc::ParseError, "vertex " + tok + " outside the complex");
      if (seen[v]) throw Error(Errc::ParseError, "vertex " + tok + " appears twice");
      seen[v] = true;
      cyc.push_back(static_cast<Vertex>(v));
    }
    for (std::size_t i = 0; i < cyc.size(); ++i) perm[cyc[i]] = cyc[(i + 1) % cyc.size()];
    pos = close + 1;
  }
  return perm;
}

std::string format_cycles(const Permutation& perm) {
  std::string out;
  std::vector<bool> done(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (done[i] || perm[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = perm[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

void check_automorphism(const SimplicialComplex2& c, const Permutation& g) {
  if (g.size() != c.vertex_count) throw Error(Errc::InvalidAction, "permutation has the wrong length");
  std::vector<bool> hit(g.size(), false);
  for (Vertex v : g) {
    if (v >= g.size() || hit[v]) throw Error(Errc::InvalidAction, "not a permutation");
    hit[v] = true;
  }
  for (const auto& e : c.edges)
    if (!std::binary_search(c.edges.begin(), c.edges.end(), sorted(Edge{g[e[0]], g[e[1]]})))
      throw Error(Errc::InvalidAction, format_cycles(g) + " does not preserve the edges");
  for (const auto& t : c.triangles)
    if (!std::binary_search(c.triangles.begin(), c.triangles.end(), sorted(Triangle{g[t[0]], g[t[1]], g[t[2]]})))
      throw Error(Errc::InvalidAction, format_cycles(g) + " does not preserve the triangles");
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

Permutation identity(std::size_t n) {
  Permutation id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<Vertex>(i);
  return id;
}

}  // namespace

void FiniteAction::index_orbits(std::size_t n) {
  orbit_rep_.assign(n, 0);
  stabilizer_.assign(n, 0);
  reps_.clear();
  for (Vertex v = 0; v < n; ++v) {
    Vertex rep = v;
    for (const auto& g : elements_) {
      rep = std::min(rep, g[v]);
      if (g[v] == v) ++stabilizer_[v];
    }
    orbit_rep_[v] = rep;
    if (rep == v) reps_.push_back(v);
  }
}

FiniteAction FiniteAction::trivial(std::size_t n) {
  FiniteAction a;
  a.elements_.push_back(identity(n));
  a.index_orbits(n);
  return a;
}

FiniteAction FiniteAction::generated_by(const SimplicialComplex2& complex, std::vector<Permutation> generators) {
  for (const auto& g : generators) check_automorphism(complex, g);
  std::set<Permutation> group{identity(complex.vertex_count)};
  std::vector<Permutation> frontier{identity(complex.vertex_count)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& h : frontier)
      for (const auto& g : generators) {
        auto gh = compose(g, h);
        if (group.insert(gh).second) next.push_back(std::move(gh));
      }
    frontier = std::move(next);
  }
  FiniteAction a;
  a.elements_.assign(group.begin(), group.end());
  a.index_orbits(complex.vertex_count);
  return a;
}

FiniteAction FiniteAction::from_elements(const SimplicialComplex2& complex, std::vector<Permutation> elements) {
  for (const auto& g : elements) check_automorphism(complex, g);
  std::set<Permutation> group(elements.begin(), elements.end());
  if (!group.count(identity(complex.vertex_count)))
    throw Error(Errc::InvalidAction, "element list lacks the identity");
  for (const auto& a : group)
    for (const auto& b : group)
      if (!group.count(compose(a, b)))
        throw Error(Errc::InvalidAction, "element list is not closed under composition");
  FiniteAction a;
  a.elements_.assign(group.begin(), group.end());
  a.index_orbits(complex.vertex_count);
  return a;
}

namespace {

std::vector<std::string> tokens_of(std::string line) {
  const auto hash = line.find('#');
  if (hash != std::string::npos) line.erase(hash);
  std::istringstream ls(line);
  std::vector<std::string> toks;
  for (std::string t; ls >> t;) toks.push_back(t);
  return toks;
}

Vertex parse_index(const std::string& tok, std::size_t lineno) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": bad vertex '" + tok + "'");
  return static_cast<Vertex>(std::stoul(tok));
}

}  // namespace

SimplicialComplex2 read_complex(std::istream& in) {
  std::string line;
  std::size_t lineno = 0, n = 0;
  bool have_header = false;
  std::vector<Triangle> tris;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "v") throw Error(Errc::ParseError, where + "expected 'v <n>'");
      n = parse_index(toks[1], lineno);
      have_header = true;
    } else if (toks[0] == "t" && toks.size() == 4) {
      tris.push_back({parse_index(toks[1], lineno), parse_index(toks[2], lineno), parse_index(toks[3], lineno)});
    } else if (toks[0] == "e" && toks.size() == 3) {
      edges.push_back({parse_index(toks[1], lineno), parse_index(toks[2], lineno)});
    } else {
      throw Error(Errc::ParseError, where + "expected 't i j k' or 'e i j'");
    }
    if (have_header && toks[0] != "v") {
      for (Vertex v : (toks[0] == "t" ? std::vector<Vertex>(tris.back().begin(), tris.back().end())
                                      : std::vector<Vertex>(edges.back().begin(), edges.back().end())))
        if (v >= n) throw Error(Errc::ParseError, where + "vertex index out of range");
    }
  }
  if (!have_header) throw Error(Errc::ParseError, "missing 'v <n>' header");
  try {
    return make_complex(n, std::move(tris), std::move(edges));
  } catch (const Error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

SimplicialComplex2 read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_complex(in);
}

void write_complex(std::ostream& out, const SimplicialComplex2& complex) {
  out << "v " << complex.vertex_count << '\n';
  std::set<Edge> covered;
  for (const auto& t : complex.triangles) {
    out << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    covered.insert({t[0], t[1]});
    covered.insert({t[0], t[2]});
    covered.insert({t[1], t[2]});
  }
  for (const auto& e : complex.edges)
    if (!covered.count(e)) out << "e " << e[0] << ' ' << e[1] << '\n';
}

FiniteAction read_action(std::istream& in, const SimplicialComplex2& complex) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<Permutation> gens;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      gens.push_back(parse_cycles(line, complex.vertex_count));
    } catch (const Error& e) {
      throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return FiniteAction::generated_by(complex, std::move(gens));
}

FiniteAction read_action_file(const std::string& path, const SimplicialComplex2& complex) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_action(in, complex);
}

}  // namespace zsl
