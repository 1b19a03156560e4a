#include "airylab/families.hpp"
#include "doctest.h"

using namespace airylab;

TEST_CASE("families are reproducible and sized") {
  for (auto k : {FamilyKind::gaussian, FamilyKind::wave_packet, FamilyKind::dyadic_bump, FamilyKind::random_phase,
                 FamilyKind::two_bump_separated}) {
    FamilySpec s;
    s.kind = k;
    s.count = 12;
    const auto a = generate_family(s), b = generate_family(s);
    REQUIRE(a.size() == 12);
    const Grid g(64, 8.0 * kPi);
    for (std::size_t m = 0; m < a.size(); ++m)
      for (int d = 0; d < 3; ++d) CHECK(a[m].data[d].sample(g).values == b[m].data[d].sample(g).values);
    CHECK(family_from_name(family_name(k)) == k);
  }
  CHECK_THROWS(family_from_name("nope"));
}

TEST_CASE("seed changes the members") {
  FamilySpec s;
  s.kind = FamilyKind::random_phase;
  s.count = 3;
  const auto a = generate_family(s);
  s.seed = 2;
  const auto b = generate_family(s);
  const Grid g(64, 8.0 * kPi);
  CHECK(a[0].data[0].sample(g).values != b[0].data[0].sample(g).values);
}

TEST_CASE("profiles respect the band and avoid the origin on request") {
  FamilySpec s;
  s.kind = FamilyKind::gaussian;
  s.avoid_origin = true;
  s.count = 8;
  for (const auto& m : generate_family(s))
    for (int d = 0; d < 3; ++d) {
      for (const auto& t : m.data[d].terms) CHECK(std::abs(t.a) >= 1.5 + 3.0 * t.b - 1e-12);
      CHECK(std::abs(m.data[d](m.data[d].band + 0.1)) == 0.0);
    }
}

TEST_CASE("smooth bump") {
  CHECK(smooth_bump(0.5, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(smooth_bump(1.0, 0.0, 1.0) == 0.0);
  CHECK(smooth_bump(-0.1, 0.0, 1.0) == 0.0);
}
