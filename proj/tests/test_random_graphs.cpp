#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zsl/erdos_renyi.hpp"
#include "zsl/error.hpp"
#include "zsl/montecarlo.hpp"
#include "zsl/spectral.hpp"

using namespace zsl;

TEST_CASE("extreme edge probabilities") {
  const auto empty = sample_er({30, 0.0, 1});
  for (double d : empty.degrees()) CHECK(d == 0.0);
  const auto full = sample_er({30, 1.0, 1});
  for (double d : full.degrees()) CHECK(d == 29.0);
  CHECK(restricted_norm(full) == doctest::Approx(1.0 / 29.0).epsilon(1e-10));
  CHECK_THROWS_AS(sample_er({30, 1.5, 1}), Error);
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto a = sample_er({60, 0.1, 42}), b = sample_er({60, 0.1, 42}), c = sample_er({60, 0.1, 43});
  CHECK(a.dense() == b.dense());
  CHECK(a.dense() != c.dense());
}

TEST_CASE("mean degree is (m-1) rho") {
  const std::size_t m = 80;
  const double rho = 0.07;
  const int trials = 200;
  double sum = 0.0, sum2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto g = sample_er({m, rho, static_cast<std::uint64_t>(1000 + t)});
    const double mean = g.total_weight() / static_cast<double>(m);
    sum += mean;
    sum2 += mean * mean;
  }
  const double avg = sum / trials;
  const double se = std::sqrt((sum2 / trials - avg * avg) / (trials - 1));
  CHECK(std::abs(avg - (m - 1) * rho) <= 3.0 * se);
}

TEST_CASE("degree statistics") {
  const auto s = degree_stats(sample_er({25, 1.0, 0}), 1.0);
  CHECK(s.min_deg == 24.0);
  CHECK(s.max_deg == 24.0);
  CHECK(s.l1_dev_expected == 0.0);
  CHECK(s.l1_dev_mean == 0.0);
  CHECK_THROWS_AS(degree_stats(sample_er({25, 0.0, 0}), 0.0), Error);
  CHECK_THROWS_AS(degree_stats(sample_er({25, 0.0, 0}), 0.5), Error);

  const auto g = build_graph(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  const auto p = degree_stats(g, 0.5);
  // degrees 1,2,2,1; (m-1) rho = 1.5; mean 1.5
  CHECK(p.l1_dev_expected == doctest::Approx(2.0 / (4.0 * 1.5)));
  CHECK(p.l1_dev_mean == doctest::Approx(2.0 / (4.0 * 1.5)));
}

TEST_CASE("gap trials") {
  const auto full = er_gap_trial({40, 1.0, 3});
  CHECK(full.connected);
  CHECK(full.scaled_gap == doctest::Approx(std::sqrt(40.0) / 39.0).epsilon(1e-10));
  int connected = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto t = er_gap_trial({16, 0.9, s});
    if (t.connected && t.gap < 1.0) ++connected;
  }
  CHECK(connected >= 49);
  const auto sparse = er_gap_trial({40, 0.0, 3});
  CHECK_FALSE(sparse.connected);
  CHECK(sparse.gap == 1.0);
}

TEST_CASE("rho rules") {
  CHECK(RhoRule::parse("0.25")(10) == 0.25);
  CHECK(RhoRule::parse("2*logm/m")(1000) == doctest::Approx(2.0 * std::log(1000.0) / 1000.0));
  CHECK(RhoRule::parse("logm/(8*m^2)")(100) == doctest::Approx(std::log(100.0) / 80000.0));
  CHECK(RhoRule::parse("1.5*logm/(8*m^2)")(100) == doctest::Approx(1.5 * std::log(100.0) / 80000.0));
  CHECK(RhoRule::parse("16/m^2")(300) == doctest::Approx(16.0 / 90000.0));
  CHECK(RhoRule::parse("3*1/m^2")(10) == doctest::Approx(0.03));
  CHECK(RhoRule::parse(" 2 * logm / m ")(50) == doctest::Approx(2.0 * std::log(50.0) / 50.0));
  for (const char* bad : {"", "abc", "2*logm", "1.5", "-0.1", "x/m^2"}) {
    try {
      RhoRule::parse(bad);
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidDescriptor);
    }
  }
}

TEST_CASE("experiment grid counting and seeds") {
  ExperimentDescriptor d;
  d.kind = "er_degree";
  d.m_values = {500, 1000};
  d.rho_rules = {"2*logm/m"};
  d.trials = 10;
  d.master_seed = 7;
  const auto rows = run_er_experiment(d);
  REQUIRE(rows.size() == 20);
  for (const auto& r : rows) {
    CHECK(r.seed == trial_seed(r.master_seed, r.grid, r.trial));
    CHECK(r.master_seed == 7);
    CHECK_FALSE(r.gap.has_value());
  }
  CHECK(rows[0].m == 500);
  CHECK(rows[10].m == 1000);
  CHECK(rows[10].grid == 1);
}

TEST_CASE("experiment output is byte-identical across reruns and worker counts") {
  ExperimentDescriptor d;
  d.m_values = {40, 60};
  d.rho_rules = {"2*logm/m", "0.3"};
  d.trials = 4;
  d.master_seed = 99;
  auto dump = [&](int workers) {
    d.workers = workers;
    std::ostringstream csv, json;
    const auto rows = run_er_experiment(d);
    write_er_csv(csv, rows, {{"seed", "99"}});
    write_er_json(json, rows, {{"seed", "99"}});
    return csv.str() + json.str();
  };
  const auto one = dump(1);
  CHECK(one == dump(1));
  CHECK(one == dump(3));
  CHECK(one == dump(16));
}

TEST_CASE("descriptor validation") {
  ExperimentDescriptor d;
  d.m_values = {10};
  d.rho_rules = {"0.5"};
  CHECK_NOTHROW(validate_descriptor(d));
  auto expect_invalid = [](const ExperimentDescriptor& bad) {
    try {
      validate_descriptor(bad);
      FAIL("descriptor accepted");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidDescriptor);
    }
  };
  auto k = d;
  k.kind = "bogus";
  expect_invalid(k);
  auto e = d;
  e.m_values.clear();
  expect_invalid(e);
  auto t = d;
  t.trials = 0;
  expect_invalid(t);
}

TEST_CASE("worker pool keeps index order and rethrows") {
  std::function<int(std::size_t)> sq = [](std::size_t i) { return static_cast<int>(i * i); };
  const auto out = run_indexed<int>(50, 4, sq);
  for (std::size_t i = 0; i < 50; ++i) CHECK(out[i] == static_cast<int>(i * i));
  std::function<int(std::size_t)> boom = [](std::size_t i) -> int {
    if (i == 7) throw std::runtime_error("seven");
    return 0;
  };
  CHECK_THROWS_WITH(run_indexed<int>(20, 3, boom), "seven");
}
