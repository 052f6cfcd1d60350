#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "zsl/certify.hpp"
#include "zsl/error.hpp"
#include "zsl/presentation.hpp"

using namespace zsl;

TEST_CASE("L^p threshold") {
  CHECK(epsilon_lp(2.0) == 0.25);
  CHECK(epsilon_lp(3.0) == doctest::Approx(2.0 * std::pow(3.0, -1.5) * std::pow(2.0, -4.5)).epsilon(1e-14));
  CHECK(epsilon_lp(3.0) == doctest::Approx(1.7010e-2).epsilon(1e-4));
  double prev = epsilon_lp(2.0);
  for (int i = 1; i <= 1000; ++i) {
    const double e = epsilon_lp(2.0 + 0.01 * i);
    CHECK(e < prev);
    prev = e;
  }
  CHECK_THROWS_AS(epsilon_lp(1.9), Error);
}

TEST_CASE("isomorphic threshold") {
  for (double p : {2.0, 3.0, 4.5}) CHECK(epsilon_isomorphic(p, 1.0, 2.0) == doctest::Approx(epsilon_lp(p)).epsilon(1e-14));
  CHECK(epsilon_isomorphic(2.0, 2.0, 1.0) == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
  CHECK(epsilon_isomorphic(3.0, 1.5, 1.0) < epsilon_isomorphic(3.0, 1.2, 1.0));
  CHECK_THROWS_AS(epsilon_isomorphic(3.0, 0.9, 1.0), Error);
  CHECK_THROWS_AS(epsilon_isomorphic(3.0, 1.0, 0.0), Error);
}

TEST_CASE("family parsing") {
  const auto fs = parse_families("lp,theta,subquotient:alpha=2,custom:eps=0.01");
  REQUIRE(fs.size() == 4);
  CHECK(fs[0].kind == FamilyKind::Lp);
  CHECK(fs[1].kind == FamilyKind::Theta);
  CHECK(fs[2].kind == FamilyKind::Subquotient);
  CHECK(fs[2].alpha == 2.0);
  CHECK(fs[2].params() == "alpha=2");
  CHECK(fs[3].eps == 0.01);
  CHECK(fs[3].name() == "custom");
  CHECK_THROWS_AS(parse_families("lq"), Error);
  CHECK_THROWS_AS(parse_families("subquotient:alpha=0.5"), Error);
}

TEST_CASE("max_p inverts the threshold") {
  const Family lp;
  for (double p : {2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0, 5.5, 6.0}) {
    const auto r = max_p_certified(epsilon_lp(p), lp);
    REQUIRE(r.p);
    CHECK(std::abs(*r.p - p) <= 1e-6);
    CHECK_FALSE(r.unbounded);
  }
  CHECK(std::abs(*max_p_certified(1.7010e-2, lp).p - 3.0) <= 1e-4);
  CHECK_FALSE(max_p_certified(0.3, lp).p);
  CHECK_FALSE(max_p_certified(1.0, lp).p);
  const auto zero = max_p_certified(0.0, lp);
  CHECK(zero.unbounded);
  CHECK(*zero.p == 64.0);
  CHECK(*max_p_certified(1e-300, lp, 1.0, 10.0).p == 10.0);
  const Family sub{FamilyKind::Subquotient, 2.0, 0.0};
  const auto s = max_p_certified(epsilon_isomorphic(2.7, 2.0, 1.0), sub);
  CHECK(std::abs(*s.p - 2.7) <= 1e-6);
  CHECK_FALSE(max_p_certified(0.1, Family{FamilyKind::Custom, 1.0, 0.2}).p);
}

TEST_CASE("density ranges and conformal dimension") {
  const auto small = corollary14_ranges(1e6, 0.4, 0.01);
  CHECK(small.p_max_lp == doctest::Approx(std::sqrt(0.2 * std::log(1e6) / (0.01 + std::log(2.0)))));
  CHECK(small.p_max_lp == doctest::Approx(1.982).epsilon(1e-3));
  CHECK(small.lp_range_empty);
  const auto huge = corollary14_ranges(1e40, 0.4, 0.01, 2.0);
  CHECK(huge.p_max_lp == doctest::Approx(5.12).epsilon(2e-3));
  CHECK_FALSE(huge.lp_range_empty);
  REQUIRE(huge.p_max_subquotient);
  CHECK(*huge.p_max_subquotient ==
        doctest::Approx(std::sqrt(0.2 * std::log(1e40) / (0.01 + std::log(4.0))) - 0.5));
  const auto third = corollary14_ranges(1e40, 1.0 / 3.0, 0.01, 1.5);
  CHECK(third.lp_range_empty);
  CHECK(third.subquotient_range_empty);
  CHECK(confdim_lower_bound(1e40, 1.0 / 3.0, 0.01) == doctest::Approx(0.0));
  for (double m : {1e3, 1e9, 1e40})
    for (double d : {0.35, 0.4, 0.6, 0.9})
      CHECK(corollary14_ranges(m, d, 0.05).p_max_lp == confdim_lower_bound(m, d, 0.05));
  CHECK(density_condition(1e40, 0.4, 0.01));
  CHECK_FALSE(density_condition(1e3, 0.34, 0.01));
  CHECK_THROWS_AS(corollary14_ranges(1e6, 1.2, 0.01), Error);
  CHECK_THROWS_AS(corollary14_ranges(1e6, 0.4, 0.0), Error);
}

TEST_CASE("density-model threshold") {
  const auto t = theorem71_threshold(100.0, 3.0 / 10000.0, 3.0);
  CHECK(t.certifiable_epsilon == doctest::Approx(1.0));
  const double m = 500.0;
  const auto u = theorem71_threshold(m, std::log(m) / (8.0 * m * m), 1.0);
  CHECK(u.log_rule == doctest::Approx(u.certifiable_epsilon));
  CHECK(theorem71_threshold(m, 64.0 / (m * m), 1.0).certifiable_epsilon <
        theorem71_threshold(m, 16.0 / (m * m), 1.0).certifiable_epsilon);
  CHECK_THROWS_AS(theorem71_threshold(m, 1e-4, 0.0), Error);
}

TEST_CASE("certification is strict and monotone in the gap") {
  const auto fams = parse_families("lp,theta,subquotient:alpha=1.5,custom:eps=0.05");
  const auto at = certify_gap(0.25, fams);
  CHECK_FALSE(at.families[0].certified);
  CHECK_FALSE(at.families[0].max_p.p);
  const auto below = certify_gap(0.2499, fams);
  CHECK(below.families[0].certified);
  CHECK(*below.families[0].max_p.p >= 2.0);
  for (double g1 = 0.0; g1 <= 0.3; g1 += 0.01)
    for (double g2 = g1; g2 <= 0.3; g2 += 0.01) {
      const auto c1 = certify_gap(g1, fams), c2 = certify_gap(g2, fams);
      for (std::size_t i = 0; i < fams.size(); ++i)
        if (c2.families[i].certified) CHECK(c1.families[i].certified);
    }
}

TEST_CASE("certificates for presentations") {
  Presentation none;
  none.m = 3;
  const auto empty = certify_presentation(none, parse_families("lp"));
  CHECK(empty.gap == 1.0);
  CHECK_FALSE(empty.families[0].certified);

  Presentation full;
  full.m = 1;
  full.relators = enumerate_relators(1);
  const auto c = certify_presentation(full, parse_families("lp,theta"));
  CHECK(c.gap == doctest::Approx(1.0));
  for (const auto& f : c.families) CHECK_FALSE(f.certified);

  CertifyOptions o;
  o.b_const = 2.5;
  const auto d = certify_presentation(sample_density_model(12, 0.45, 4), parse_families("lp"), o);
  CHECK(d.confdim_lower.has_value());
  const auto j = nlohmann::json::parse(certificate_json(d));
  for (const char* key : {"m", "model", "seed", "n_relators", "gap", "families", "confdim_lower", "constants"})
    CHECK(j.contains(key));
  CHECK(j["constants"]["K"] == 1.0);
  CHECK(j["constants"]["B"] == 2.5);
  CHECK(j["families"][0]["name"] == "lp");
}
