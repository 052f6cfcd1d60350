#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zsl/complex.hpp"
#include "zsl/error.hpp"
#include "zsl/fixed_point.hpp"
#include "zsl/rng.hpp"
#include "zsl/spectral.hpp"

using namespace zsl;

namespace {

VertexField scalar(std::vector<double> v) { return VertexField{1, std::move(v)}; }

VertexField random_field(std::size_t n, std::size_t k, const FiniteAction& action, CounterRng& rng) {
  VertexField f{k, std::vector<double>(n * k)};
  for (Vertex rep : action.representatives())
    for (std::size_t j = 0; j < k; ++j) f.at(rep, j) = rng.normal();
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t j = 0; j < k; ++j) f.at(v, j) = f.at(action.representative(v), j);
  return f;
}

double sup_spread(const VertexField& f) {
  double worst = 0.0;
  const std::size_t n = f.vertex_count();
  for (std::size_t j = 0; j < f.dim; ++j)
    for (std::size_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(f.at(v, j) - f.at(0, j)));
  return worst;
}

// Both sides of the energy identity summed directly from the complex:
// sum over vertices m of |triangles at m| times the link averages.
std::pair<double, double> energy_oracle(const SimplicialComplex2& c, const VertexField& phi, const VertexField& psi,
                                        double p) {
  double edge_side = 0.0, vertex_side = 0.0;
  for (Vertex m = 0; m < c.vertex_count; ++m) {
    std::vector<std::pair<Vertex, Vertex>> pairs;  // ordered pairs of link vertices sharing a triangle
    std::vector<double> deg(c.vertex_count, 0.0);
    double total = 0.0;
    for (const auto& t : c.triangles) {
      if (t[0] != m && t[1] != m && t[2] != m) continue;
      std::vector<Vertex> others;
      for (Vertex v : t)
        if (v != m) others.push_back(v);
      pairs.push_back({others[0], others[1]});
      pairs.push_back({others[1], others[0]});
      deg[others[0]] += 1.0;
      deg[others[1]] += 1.0;
      total += 2.0;
    }
    if (total == 0.0) continue;
    double e = 0.0, v = 0.0;
    for (auto [a, b] : pairs) {
      double s = 0.0;
      for (std::size_t j = 0; j < phi.dim; ++j) s += std::pow(std::abs(phi.at(a, j) - psi.at(b, j)), p);
      e += s / total;
    }
    for (Vertex n = 0; n < c.vertex_count; ++n) {
      if (deg[n] == 0.0) continue;
      double s = 0.0;
      for (std::size_t j = 0; j < phi.dim; ++j) s += std::pow(std::abs(phi.at(n, j) - psi.at(m, j)), p);
      v += deg[n] / total * s;
    }
    edge_side += total * e;
    vertex_side += total * v;
  }
  return {edge_side, vertex_side};
}

}  // namespace

TEST_CASE("links of small complexes") {
  const auto tri = single_triangle();
  const auto l = link_of(tri, 1);
  CHECK(l.graph.vertex_count() == 2);
  CHECK(l.graph.weight(0, 1) == 1.0);
  CHECK(l.neighbors == std::vector<Vertex>{0, 2});

  const auto oct = octahedron();
  for (Vertex v = 0; v < 6; ++v) {
    const auto lv = link_of(oct, v);
    REQUIRE(lv.graph.vertex_count() == 4);
    for (Vertex s = 0; s < 4; ++s) CHECK(lv.graph.degree(s) == 2.0);
    CHECK(spectral_report(lv.graph).eigenvalues.back() == doctest::Approx(-1.0));
    CHECK(is_connected(lv.graph));
  }
  const auto with_edge = make_complex(4, {{0, 1, 2}}, {{2, 3}});
  const auto l3 = link_of(with_edge, 3);
  CHECK(l3.graph.vertex_count() == 1);
  CHECK(l3.graph.isolated_count() == 1);
  try {
    link_of(tri, 5);
    FAIL("expected UnknownVertex");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::UnknownVertex);
  }
}

TEST_CASE("cycle notation") {
  CHECK(parse_cycles("(0 1)(2 3)", 4) == Permutation{1, 0, 3, 2});
  CHECK(parse_cycles("id", 3) == Permutation{0, 1, 2});
  CHECK(parse_cycles("()", 2) == Permutation{0, 1});
  CHECK(format_cycles(parse_cycles("(0 2 4)", 6)) == "(0 2 4)");
  CHECK_THROWS_AS(parse_cycles("(0 0)", 3), Error);
  CHECK_THROWS_AS(parse_cycles("(0 9)", 3), Error);
}

TEST_CASE("finite actions") {
  const auto oct = octahedron();
  const auto anti = FiniteAction::generated_by(oct, {parse_cycles("(0 1)(2 3)(4 5)", 6)});
  CHECK(anti.order() == 2);
  CHECK(anti.representatives() == std::vector<Vertex>{0, 2, 4});
  CHECK(anti.stabilizer_order(0) == 1);
  const auto rot = FiniteAction::generated_by(oct, {parse_cycles("(0 2 4)(1 3 5)", 6)});
  CHECK(rot.order() == 3);
  try {
    FiniteAction::generated_by(single_triangle(), {Permutation{1, 0}});
    FAIL("expected InvalidAction");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidAction);
  }
  // Swapping 0 and 2 sends the face {0,3,4} to {2,3,4}, which is not a face.
  CHECK_THROWS_AS(FiniteAction::generated_by(oct, {parse_cycles("(0 2)", 6)}), Error);
  CHECK_THROWS_AS(FiniteAction::from_elements(oct, {parse_cycles("(0 1)(2 3)(4 5)", 6)}), Error);
}

TEST_CASE("energy examples") {
  const auto tri = single_triangle();
  const auto id = FiniteAction::trivial(3);
  const auto c = scalar({2.0, 2.0, 2.0});
  CHECK(energy(tri, id, c, c, 2.0).value == 0.0);

  const auto phi = scalar({0.0, 1.0, 0.0});
  const auto e = energy(tri, id, phi, phi, 2.0);
  const auto [edge, vertex] = energy_oracle(tri, phi, phi, 2.0);
  CHECK(e.edge_form == doctest::Approx(edge).epsilon(1e-12));
  CHECK(e.vertex_form == doctest::Approx(vertex).epsilon(1e-12));
  // a = 2 at every vertex, links are P2 with nu = 1/2: 2 * (1/2 + 1 + 1/2) = 4
  CHECK(e.value == doctest::Approx(2.0));
}

TEST_CASE("energy identity and symmetry on random maps") {
  CounterRng rng(41);
  const auto oct = octahedron();
  for (const auto& action : {FiniteAction::trivial(6),
                             FiniteAction::generated_by(oct, {parse_cycles("(0 1)(2 3)(4 5)", 6)})}) {
    for (double p : {1.5, 2.0, 4.0}) {
      for (int t = 0; t < 20; ++t) {
        const auto phi = random_field(6, 2, action, rng), psi = random_field(6, 2, action, rng);
        const auto e = energy(oct, action, phi, psi, p);
        CHECK(std::abs(e.edge_form - e.vertex_form) <= 1e-10 * std::max(1.0, e.vertex_form));
        CHECK(std::abs(e.value - energy(oct, action, psi, phi, p).value) <= 1e-10 * std::max(1.0, e.value));
        if (action.order() == 1) {
          const auto [edge, vertex] = energy_oracle(oct, phi, psi, p);
          CHECK(e.edge_form == doctest::Approx(edge).epsilon(1e-10));
          CHECK(e.vertex_form == doctest::Approx(vertex).epsilon(1e-10));
        }
        VertexField mid{2, std::vector<double>(12)};
        for (std::size_t i = 0; i < 12; ++i) mid.values[i] = 0.5 * (phi.values[i] + psi.values[i]);
        CHECK(energy(oct, action, mid, mid, p).value <= e.value + 1e-9);
      }
    }
  }
}

TEST_CASE("energy rejects bad maps") {
  const auto oct = octahedron();
  const auto anti = FiniteAction::generated_by(oct, {parse_cycles("(0 1)(2 3)(4 5)", 6)});
  const auto bad = scalar({0, 1, 0, 0, 0, 0});
  try {
    energy(oct, anti, bad, bad, 2.0);
    FAIL("expected NotEquivariant");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotEquivariant);
  }
  const auto short_map = scalar({0, 1});
  CHECK_THROWS_AS(energy(oct, FiniteAction::trivial(6), short_map, short_map, 2.0), Error);
}

TEST_CASE("p-means") {
  const std::vector<double> nu{0.2, 0.5, 0.3};
  const auto pts = VertexField{1, {1.0, -2.0, 4.0}};
  CHECK(p_mean(nu, pts, 2.0)[0] == doctest::Approx(0.2 - 1.0 + 1.2).epsilon(1e-10));
  for (double p : {1.2, 3.0, 9.0})
    CHECK(p_mean(std::vector<double>{0.5, 0.5}, VertexField{1, {0.0, 1.0}}, p)[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(p_mean(std::vector<double>{2.0 / 3.0, 1.0 / 3.0}, VertexField{1, {0.0, 1.0}}, 2.0)[0] ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK_THROWS_AS(p_mean(nu, pts, 1.0), Error);
}

TEST_CASE("fixed-point iteration on the triangle") {
  const auto tri = single_triangle();
  const auto id = FiniteAction::trivial(3);
  const auto r = iterate_fixed_point(tri, id, scalar({0.0, 1.0, 0.0}), 2.0);
  CHECK(r.converged);
  CHECK(r.energy_trace.back() < 1e-8);
  CHECK(sup_spread(r.phi_final) <= 1e-7);
  CHECK(r.phi_final.values[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  for (std::size_t i = 1; i < r.energy_trace.size(); ++i) CHECK(r.energy_trace[i] < r.energy_trace[i - 1]);
  for (double ratio : r.ratios) CHECK(ratio <= 0.5 + 0.05);

  const auto still = iterate_fixed_point(tri, id, scalar({3.0, 3.0, 3.0}), 2.0);
  CHECK(still.iterations == 0);
  CHECK(still.energy_trace == std::vector<double>{0.0});
  CHECK(still.converged);
}

TEST_CASE("fixed-point iteration on the octahedron") {
  const auto oct = octahedron();
  CounterRng rng(42);
  const auto sys = link_system(oct, FiniteAction::trivial(6));
  for (const auto& action : {FiniteAction::trivial(6),
                             FiniteAction::generated_by(oct, {parse_cycles("(0 1)(2 3)(4 5)", 6)})}) {
    for (double p : {2.0, 4.0}) {
      const double pi_hat = max_link_poincare(oct, action, p, 6, 3);
      CHECK(pi_hat < 1.0);
      const auto phi0 = random_field(6, 2, action, rng);
      const auto r = iterate_fixed_point(oct, action, phi0, p);
      CHECK(r.converged);
      CHECK(sup_spread(r.phi_final) <= 1e-7);
      for (double ratio : r.ratios) CHECK(ratio <= pi_hat + 0.05);
      for (std::size_t n = 1; n < r.energy_trace.size(); ++n) {
        CHECK(r.energy_trace[n] < r.energy_trace[n - 1]);
        CHECK(r.energy_trace[n] <= std::pow(pi_hat + 0.05, static_cast<double>(n)) * r.energy_trace[0] + 1e-15);
      }
      for (std::size_t n = 0; n < r.distances.size(); ++n) CHECK(r.distances[n] <= r.energy_trace[n] + 1e-10);
    }
  }
  (void)sys;
}

TEST_CASE("iteration limit returns a partial trace") {
  FixedPointOptions o;
  o.max_iter = 3;
  o.tol = 0.0;
  const auto r = iterate_fixed_point(single_triangle(), FiniteAction::trivial(3), scalar({0.0, 1.0, 0.0}), 2.0, o);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 3);
  CHECK(r.energy_trace.size() == 4);
}

TEST_CASE("disconnected links are rejected") {
  // Two triangles sharing only vertex 0: the link of 0 is two disjoint edges.
  const auto bowtie = make_complex(5, {{0, 1, 2}, {0, 3, 4}});
  try {
    iterate_fixed_point(bowtie, FiniteAction::trivial(5), scalar({0, 1, 2, 3, 4}), 2.0);
    FAIL("expected DisconnectedLink");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DisconnectedLink);
  }
}

TEST_CASE("complex and action files") {
  std::istringstream cin("v 4\nt 0 1 2\ne 2 3\n");
  const auto c = read_complex(cin);
  CHECK(c.vertex_count == 4);
  CHECK(c.triangles.size() == 1);
  CHECK(c.edges.size() == 4);
  std::stringstream out;
  write_complex(out, c);
  const auto back = read_complex(out);
  CHECK(back.edges == c.edges);
  CHECK(back.triangles == c.triangles);

  std::istringstream ain("(0 1)(2 3)(4 5)\n");
  CHECK(read_action(ain, octahedron()).order() == 2);
  std::istringstream bad("v 3\nt 0 1\n");
  try {
    read_complex(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
