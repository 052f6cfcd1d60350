#include <doctest.h>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "support.hpp"
#include "zsl/error.hpp"
#include "zsl/graph.hpp"
#include "zsl/spectral.hpp"

using namespace zsl;
using zsl::testing::random_connected_graph;

namespace {

// Eigenvalues of W v = lambda D v through LAPACK's generalized solver,
// descending. Independent of the symmetrised matrix used by the library.
std::vector<double> generalized_eigenvalues(const WeightedGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> w = g.dense(), d(n * n, 0.0), vals(n);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = g.degree(static_cast<Vertex>(i));
  const lapack_int ln = static_cast<lapack_int>(n);
  REQUIRE(LAPACKE_dsygv(LAPACK_COL_MAJOR, 1, 'N', 'U', ln, w.data(), ln, d.data(), ln, vals.data()) == 0);
  std::reverse(vals.begin(), vals.end());
  return vals;
}

template <class E>
Errc error_code(E&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no zsl::Error thrown");
  return Errc::UsageError;
}

}  // namespace

TEST_CASE("build_graph sums symmetric entries") {
  const auto p2 = build_graph(2, {{0, 1, 1.0}});
  CHECK(p2.degree(0) == 1.0);
  CHECK(p2.degree(1) == 1.0);
  const auto k3 = build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  for (Vertex v = 0; v < 3; ++v) CHECK(k3.degree(v) == 2.0);
  const auto g = build_graph(2, {{0, 1, 1.0}, {1, 0, 2.0}});
  CHECK(g.weight(0, 1) == 3.0);
  CHECK(g.weight(1, 0) == 3.0);
}

TEST_CASE("build_graph rejects bad entries") {
  CHECK(error_code([] { build_graph(2, {{0, 1, -1.0}}); }) == Errc::NegativeWeight);
  CHECK(error_code([] { build_graph(2, {{0, 2, 1.0}}); }) == Errc::IndexOutOfRange);
}

TEST_CASE("random walk measures") {
  const auto k3 = complete_graph(3);
  const auto mk = measures(k3);
  for (double x : mk.nu) CHECK(x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mk.edge_prob.size() == 6);
  for (double x : mk.edge_prob) CHECK(x == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const auto mp = measures(path_graph(2));
  CHECK(mp.nu == std::vector<double>{0.5, 0.5});
  CHECK(mp.edge_prob == std::vector<double>{0.5, 0.5});

  const auto ms = measures(star_graph(3));
  CHECK(ms.nu[0] == doctest::Approx(0.5));
  for (int i = 1; i <= 3; ++i) CHECK(ms.nu[i] == doctest::Approx(1.0 / 6.0));

  CHECK(error_code([] { measures(build_graph(3, {{0, 1, 1.0}})); }) == Errc::IsolatedVertex);
}

TEST_CASE("markov_apply examples") {
  const auto k3 = complete_graph(3);
  CHECK(markov_apply(k3, std::vector<double>{1, 1, 1}) == std::vector<double>{1, 1, 1});
  CHECK(markov_apply(path_graph(2), std::vector<double>{2.5, -7.0}) == std::vector<double>{-7.0, 2.5});
  const auto r = markov_apply(k3, std::vector<double>{1, 0, 0});
  CHECK(r[0] == 0.0);
  CHECK(r[1] == doctest::Approx(0.5));
  CHECK(r[2] == doctest::Approx(0.5));
}

TEST_CASE("spectral_report examples") {
  for (std::size_t n : {1, 2, 3, 7}) {
    const auto r = spectral_report(complete_bipartite(n, n));
    REQUIRE(r.eigenvalues.size() == 2 * n);
    CHECK(r.eigenvalues.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.eigenvalues.back() == doctest::Approx(-1.0).epsilon(1e-12));
    for (std::size_t i = 1; i + 1 < 2 * n; ++i) CHECK(std::abs(r.eigenvalues[i]) < 1e-10);
    CHECK(r.bipartite);
    CHECK(r.restricted_norm == doctest::Approx(1.0));
  }
  const auto k3 = spectral_report(complete_graph(3));
  CHECK(k3.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(k3.eigenvalues[1] == doctest::Approx(-0.5));
  CHECK(k3.eigenvalues[2] == doctest::Approx(-0.5));
  CHECK(k3.restricted_norm == doctest::Approx(0.5));
  const auto c4 = spectral_report(cycle_graph(4));
  CHECK(c4.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(std::abs(c4.eigenvalues[1]) < 1e-12);
  CHECK(std::abs(c4.eigenvalues[2]) < 1e-12);
  CHECK(c4.eigenvalues[3] == doctest::Approx(-1.0));
  CHECK(c4.restricted_norm == doctest::Approx(1.0));
  CHECK(error_code([] { spectral_report(build_graph(3, {})); }) == Errc::EmptyGraph);
}

TEST_CASE("isolated vertices and disconnection give norm 1") {
  const auto iso = spectral_report(build_graph(4, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}}));
  CHECK(iso.isolated_removed == 1);
  CHECK_FALSE(iso.connected);
  CHECK(iso.restricted_norm == 1.0);
  const auto two = graph_union(build_graph(6, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}),
                               build_graph(6, {{3, 4, 1}, {4, 5, 1}, {3, 5, 1}}));
  CHECK(restricted_norm(two) == 1.0);
}

TEST_CASE("constants are fixed by A") {
  CounterRng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_connected_graph(2 + rng.below(20), rng);
    const auto out = markov_apply(g, std::vector<double>(g.vertex_count(), 1.0));
    for (double x : out) CHECK(std::abs(x - 1.0) <= 1e-12);
  }
}

TEST_CASE("symmetrised spectrum matches the generalized eigenproblem") {
  CounterRng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_connected_graph(2 + rng.below(30), rng);
    const auto ours = spectral_report(g).eigenvalues;
    const auto ref = generalized_eigenvalues(g);
    REQUIRE(ours.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(ours[i] - ref[i]) <= 1e-9);
  }
}

TEST_CASE("restricted norm is at most 1 with equality exactly for disconnected or bipartite graphs") {
  CounterRng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    WeightedGraph g;
    switch (trial % 3) {
      case 0: g = random_connected_graph(n, rng); break;
      case 1: {
        std::vector<WeightEntry> e;
        for (Vertex s = 0; s < n; ++s)
          for (Vertex t = s + 1; t < n; ++t)
            if ((s + t) % 2 == 1 && (t == s + 1 || rng.uniform() < 0.5)) e.push_back({s, t, 0.5 + rng.uniform()});
        g = build_graph(n, e);
        break;
      }
      default: {
        std::vector<WeightEntry> e;
        for (Vertex s = 0; s < n; ++s)
          for (Vertex t = s + 1; t < n; ++t)
            if (rng.uniform() < 0.15) e.push_back({s, t, 0.5 + rng.uniform()});
        if (e.empty()) e.push_back({0, 1, 1.0});
        g = build_graph(n, e);
      }
    }
    const auto r = spectral_report(g);
    CHECK(r.restricted_norm <= 1.0 + 1e-12);
    const bool degenerate = !r.connected || r.bipartite;
    CHECK(degenerate == (r.restricted_norm > 1.0 - 1e-9));
  }
}

TEST_CASE("scaling the weights changes nothing") {
  CounterRng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = random_connected_graph(3 + rng.below(12), rng);
    const double c = 0.01 + 50.0 * rng.uniform();
    const auto h = scaled(g, c);
    const auto mg = measures(g), mh = measures(h);
    for (std::size_t i = 0; i < mg.nu.size(); ++i) CHECK(std::abs(mg.nu[i] - mh.nu[i]) <= 1e-12);
    for (std::size_t i = 0; i < mg.edge_prob.size(); ++i) CHECK(std::abs(mg.edge_prob[i] - mh.edge_prob[i]) <= 1e-12);
    const auto eg = spectral_report(g).eigenvalues, eh = spectral_report(h).eigenvalues;
    for (std::size_t i = 0; i < eg.size(); ++i) CHECK(std::abs(eg[i] - eh[i]) <= 1e-12);
  }
}

TEST_CASE("graph union") {
  CounterRng rng(15);
  const auto g = random_connected_graph(9, rng);
  const auto empty = build_graph(9, {});
  const auto u = graph_union(g, empty);
  CHECK(u.dense() == g.dense());

  const auto gg = graph_union(g, g);
  for (Vertex s = 0; s < 9; ++s)
    for (Vertex t = 0; t < 9; ++t) CHECK(gg.weight(s, t) == 2.0 * g.weight(s, t));
  const auto e1 = spectral_report(g).eigenvalues, e2 = spectral_report(gg).eigenvalues;
  for (std::size_t i = 0; i < e1.size(); ++i) CHECK(std::abs(e1[i] - e2[i]) <= 1e-12);

  const auto h = random_connected_graph(9, rng);
  const auto gh = graph_union(g, h);
  for (Vertex s = 0; s < 9; ++s)
    for (Vertex t = 0; t < 9; ++t) CHECK(gh.weight(s, t) == doctest::Approx(g.weight(s, t) + h.weight(s, t)));

  CHECK(error_code([&] { graph_union(g, build_graph(8, {})); }) == Errc::SizeMismatch);
}

TEST_CASE("perturbation bound") {
  CounterRng rng(16);
  const auto g = random_connected_graph(10, rng);
  const auto none = perturbation_bound_check(g, build_graph(10, {}));
  CHECK(none.delta_prime == 0.0);
  CHECK(none.lhs <= 1e-12);
  CHECK(none.holds);
  const auto same = perturbation_bound_check(g, g);
  CHECK(same.delta_prime == doctest::Approx(1.0));
  CHECK(std::abs(same.norm_union - same.norm_base) <= 1e-12);
  CHECK(same.holds);

  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    const auto g1 = random_connected_graph(n, rng);
    const auto raw = random_connected_graph(n, rng, 0.3);
    double ratio = 0.0;
    for (Vertex s = 0; s < n; ++s) ratio = std::max(ratio, raw.degree(s) / g1.degree(s));
    const auto g2 = scaled(raw, 0.1 * rng.uniform() / ratio);
    const auto c = perturbation_bound_check(g1, g2);
    CHECK(c.delta_prime <= 0.1 + 1e-12);
    CHECK(c.holds);
  }
  CHECK(error_code([] { perturbation_bound_check(build_graph(3, {{0, 1, 1}}), complete_graph(3)); }) ==
        Errc::IsolatedVertex);
}

TEST_CASE("union gap bound") {
  const auto r = union_gap_bound(complete_graph(8), cycle_graph(8));
  CHECK(std::abs(r.delta) <= 1e-15);
  CHECK(r.bound == doctest::Approx(std::max(r.norm1, r.norm2)));
  CHECK(r.holds);

  const auto c5 = cycle_graph(5);
  const auto same = union_gap_bound(c5, c5);
  CHECK(same.bound == doctest::Approx(same.norm1));
  CHECK(same.norm_sum == doctest::Approx(same.norm1));
  CHECK(same.holds);

  CounterRng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    CHECK(union_gap_bound(random_connected_graph(n, rng), random_connected_graph(n, rng, 0.2)).holds);
  }
}

TEST_CASE("graph text round trip") {
  CounterRng rng(18);
  const auto g = random_connected_graph(7, rng);
  std::stringstream ss;
  write_graph(ss, g);
  const auto h = read_graph(ss);
  CHECK(h.dense() == g.dense());

  std::istringstream bad("n 3\n0 1 1\n0 x 2\n");
  try {
    read_graph(bad);
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
