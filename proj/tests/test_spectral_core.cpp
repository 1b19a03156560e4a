#include <numeric>

#include "airylab/norms.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace airylab;
using namespace testutil;

TEST_CASE("grid indexing is centered") {
  const Grid g(16, kTwoPi);
  CHECK(g.mode(0) == -8);
  CHECK(g.mode(8) == 0);
  CHECK(g.xi(9) == doctest::Approx(1.0));
  CHECK(g.x(0) == doctest::Approx(-kPi));
  CHECK(g.index_of_mode(0) == 8);
  CHECK(g.index_of_mode(8) == -1);
  CHECK(g.index_of_mode(-8) == 0);
  CHECK_THROWS(Grid(0, 1.0));
}

TEST_CASE("forward transform of a Gaussian matches the closed form") {
  // e^{-x^2/2} -> sqrt(2 pi) e^{-xi^2/2}
  const Grid g(128, 40.0);
  auto u = SpectralField::zeros(g, Side::physical);
  for (std::size_t j = 0; j < g.size(); ++j) u.values[j] = std::exp(-0.5 * g.x(j) * g.x(j));
  const auto uh = to_frequency(u);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(uh.values[i] - std::sqrt(kTwoPi) * std::exp(-0.5 * g.xi(i) * g.xi(i))));
  CHECK(err < 1e-12);
}

TEST_CASE("transform round trip and Plancherel") {
  std::mt19937_64 rng(3);
  const Grid g(64, 13.0);
  const auto f = random_field(g, rng, false);
  const auto back = to_frequency(to_physical(f));
  CHECK(max_abs_diff(back.values, f.values) < 1e-12 * max_abs(f.values));
  const auto p = to_physical(f);
  double lx = 0.0, lxi = 0.0;
  for (const cd& v : p.values) lx += std::norm(v) * g.dx();
  for (const cd& v : f.values) lxi += std::norm(v) * g.dxi() / kTwoPi;
  CHECK(lx == doctest::Approx(lxi).epsilon(1e-12));
}

TEST_CASE("space-time round trip without window") {
  std::mt19937_64 rng(5);
  const Grid g(16, kTwoPi);
  const SpaceTimeGrid st(g, SpaceTimeGrid::min_time_samples(g, 4.0), 4.0);
  auto f = SpaceTimeField::zeros(st, Side::physical);
  std::normal_distribution<double> n;
  for (auto& v : f.values) v = cd(n(rng), n(rng));
  const auto back = to_physical(to_frequency(f));
  CHECK(max_abs_diff(back.values, f.values) < 1e-12 * max_abs(f.values));
}

TEST_CASE("time samples cover the cubic phase") {
  const Grid g(32, kTwoPi);
  const std::size_t nt = SpaceTimeGrid::min_time_samples(g, 2.0);
  const SpaceTimeGrid st(g, nt, 2.0);
  CHECK(std::pow(g.xi_max(), 3) <= SpaceTimeGrid::kTauHeadroom * st.tau_max());
  CHECK_THROWS_AS(SpaceTimeGrid(g, nt / 2, 2.0), std::invalid_argument);
}

TEST_CASE("window is flat in the middle and vanishes at the ends") {
  const TimeWindow w;
  CHECK(w(0.0, 10.0) == 1.0);
  CHECK(w(4.0, 10.0) == 1.0);
  CHECK(w(5.0, 10.0) == doctest::Approx(0.0));
  CHECK(w(-4.9, 10.0) < 1.0);
  CHECK(TimeWindow::none()(4.99, 10.0) == 1.0);
}

TEST_CASE("Airy propagation is unitary on every FL space and a group") {
  std::mt19937_64 rng(11);
  const Grid g(64, 20.0);
  const auto u = freq_gauss(g, 1.0, 2.0, cd(1.0, 0.5));
  std::uniform_real_distribution<double> ur(1.05, 3.0), us(-1.0, 2.0), ut(-5.0, 5.0);
  for (int k = 0; k < 20; ++k) {
    const FLParams p(ur(rng), us(rng));
    const double t = ut(rng);
    CHECK(fl_norm(airy_propagate(u, t), p) == doctest::Approx(fl_norm(u, p)).epsilon(1e-12));
  }
  const double t1 = 0.3, t2 = -1.7;
  const auto a = airy_propagate(airy_propagate(u, t1), t2);
  const auto b = airy_propagate(u, t1 + t2);
  CHECK(max_abs_diff(a.values, b.values) < 1e-12);
}

TEST_CASE("Airy flow solves u_t + u_xxx = 0") {
  // The frequency side of the flow at time t is exp(i t xi^3) u0^.
  const Grid g(32, 10.0);
  const auto u0 = freq_gauss(g, 0.0, 1.0);
  const SpaceTimeGrid st(g, SpaceTimeGrid::min_time_samples(g, 1.0), 1.0);
  const auto flow = airy_flow(u0, st);
  for (std::size_t i = 0; i < g.size(); i += 5)
    for (std::size_t m = 0; m < st.n_t(); m += 7)
      CHECK(std::abs(flow(i, m) - std::polar(1.0, st.t(m) * std::pow(g.xi(i), 3)) * u0.values[i]) < 1e-12);
}

TEST_CASE("multiplier symbols") {
  CHECK(multiplier_symbol({MultiplierKind::bessel, 2.0}, 3.0) == doctest::Approx(10.0));
  CHECK(multiplier_symbol({MultiplierKind::riesz, 1.0}, -2.0) == doctest::Approx(2.0));
  CHECK(multiplier_symbol({MultiplierKind::riesz, -1.0}, 0.0) == 0.0);
  CHECK(multiplier_symbol({MultiplierKind::riesz, 0.0}, 0.0) == 1.0);
  CHECK(multiplier_symbol({MultiplierKind::lambda, 2.0}, 1.0, 4.0) == doctest::Approx(10.0));
}

TEST_CASE("mismatched grids are rejected") {
  CHECK_THROWS_AS(require_same_grid(Grid(16, 1.0), Grid(32, 1.0), "t"), GridMismatch);
}
