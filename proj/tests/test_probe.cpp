#include "airylab/probe.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace airylab;
using namespace testutil;

TEST_CASE("every default spec passes its own hypothesis gate") {
  for (EstimateId id : all_estimates()) {
    CHECK_MESSAGE(hypothesis_violations(default_spec(id)).empty(), estimate_name(id));
    CHECK(estimate_from_name(estimate_name(id)) == id);
  }
  CHECK(all_estimates().size() == 11);
}

TEST_CASE("hypothesis gate rejects boundary violations") {
  auto rejects = [](EstimateSpec s) { return !hypothesis_violations(s).empty(); };
  EstimateSpec s = default_spec(EstimateId::lemma1);
  s.p = 1.5;  // r1 <= p fails, and 1/p + 1/q = 1/r1 + 1/r2 fails
  CHECK(rejects(s));
  s = default_spec(EstimateId::lemma1);
  s.q = 2.5;  // q <= r_i fails
  CHECK(rejects(s));
  s = default_spec(EstimateId::cor_b1);
  s.b = 0.5;  // b > 1/r_i fails at equality
  CHECK(rejects(s));
  s = default_spec(EstimateId::cor_b2_204);
  s.beta = -0.25;  // beta < -1/rho' fails at equality
  CHECK(rejects(s));
  s = default_spec(EstimateId::fs20);
  s.r = 1.0;
  CHECK(rejects(s));
  s = default_spec(EstimateId::theorem2);
  s.b2 = 0.0;
  CHECK(rejects(s));
  s = default_spec(EstimateId::cor_t3c);
  s.rho = 5.0, s.beta = 0.2;  // beta > 1/rho fails at equality
  CHECK(rejects(s));
  s = default_spec(EstimateId::lemma3);
  s.p0 = s.p;  // p < p0 fails
  CHECK(rejects(s));
  CHECK_THROWS_AS(validate(s), HypothesisError);
}

TEST_CASE("weighted data norms") {
  const Grid g(64, 20.0);
  const auto u = freq_gauss(g, 1.0, 0.5);
  CHECK(weighted_fl_norm(u, 2.0, 0.0) == doctest::Approx(fl_norm(u, FLParams(2.0, 0.0))));
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.mode(i) != 0) acc += std::pow(std::abs(g.xi(i)) * std::abs(u.values[i]), 3.0) * g.dxi() / kTwoPi;
  CHECK(weighted_fl_norm(u, 1.5, 0.0, 1.0) == doctest::Approx(std::cbrt(acc)));
}

TEST_CASE("bilinear left side by resolved delta matches the product norm at p = q = 2") {
  // At p = 2 the mixed norm of F(uv) is the space-time L^2 norm, which by
  // Plancherel in t equals the formula side with |u|^2 * |v|^2 (Young at p' = 2).
  const Grid g(64, 8.0 * kPi);
  const auto u = freq_gauss(g, 2.0, 0.6), v = freq_gauss(g, -1.0, 0.6);
  const double lhs = bilinear_airy_mixed_norm(u, v, 2.0, 2.0);
  CHECK(std::isfinite(lhs));
  CHECK(lhs > 0.0);
}

TEST_CASE("small lemma1 probe passes and is deterministic") {
  const EstimateSpec s = default_spec(EstimateId::lemma1);
  FamilySpec f = default_family(EstimateId::lemma1);
  f.count = 4;
  const auto a = probe(s, f, default_refinements()), b = probe(s, f, default_refinements());
  CHECK(a.pass);
  CHECK(a.verdict == "PASS");
  REQUIRE(a.refinements.size() == 3);
  REQUIRE(a.growth.size() == 2);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::isfinite(a.refinements[k].max_ratio));
    CHECK(a.refinements[k].max_ratio == b.refinements[k].max_ratio);
  }
}

TEST_CASE("probe refuses specs that violate the hypotheses") {
  EstimateSpec s = default_spec(EstimateId::fs20);
  s.r = 1.0;
  CHECK_THROWS_AS(probe(s, default_family(EstimateId::fs20), default_refinements()), HypothesisError);
}
