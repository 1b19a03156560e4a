#include "airylab/mkdv.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace airylab;
using namespace testutil;

namespace {

SpectralField gaussian(const Grid& g, double amp, double w = 1.0) {
  auto u = SpectralField::zeros(g, Side::physical);
  for (std::size_t j = 0; j < g.size(); ++j) u.values[j] = amp * std::exp(-0.5 * g.x(j) * g.x(j) / (w * w));
  return to_frequency(u);
}

// d/dt v = -sign e^{-i t xi^3} i xi F(u^3), u^ = e^{i t xi^3} v, with the cube
// formed on a grid of twice the size and truncated back.
std::vector<cd> rhs(const Grid& g, const std::vector<cd>& v, double t, int sign) {
  const std::size_t n = g.size();
  const Grid big(2 * n, g.length());
  auto f = SpectralField::zeros(big);
  for (std::size_t i = 0; i < n; ++i) f.values[i + n / 2] = std::polar(1.0, t * std::pow(g.xi(i), 3)) * v[i];
  auto p = to_physical(f);
  for (auto& z : p.values) z = z * z * z;
  const auto c = to_frequency(p);
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = -double(sign) * std::polar(1.0, -t * std::pow(g.xi(i), 3)) * cd(0.0, g.xi(i)) * c.values[i + n / 2];
  return out;
}

std::vector<cd> rk4(const Grid& g, const SpectralField& u0, double T, int steps, int sign) {
  std::vector<cd> v = u0.values;
  const double h = T / steps;
  auto axpy = [](const std::vector<cd>& a, const std::vector<cd>& b, double s) {
    std::vector<cd> o(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = a[i] + s * b[i];
    return o;
  };
  for (int k = 0; k < steps; ++k) {
    const double t = k * h;
    const auto k1 = rhs(g, v, t, sign);
    const auto k2 = rhs(g, axpy(v, k1, h / 2), t + h / 2, sign);
    const auto k3 = rhs(g, axpy(v, k2, h / 2), t + h / 2, sign);
    const auto k4 = rhs(g, axpy(v, k3, h), t + h, sign);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::polar(1.0, T * std::pow(g.xi(i), 3));
  return v;
}

}  // namespace

TEST_CASE("solver configuration is validated") {
  SolverConfig c;
  CHECK_NOTHROW(validate(c));
  c.params.s = 0.1;  // below s(2) = 1/4
  CHECK_THROWS(validate(c));
  c = SolverConfig{};
  c.params.b = 0.5;
  CHECK_THROWS(validate(c));
  c = SolverConfig{};
  c.sign = 0;
  CHECK_THROWS(validate(c));
  c = SolverConfig{};
  c.delta = 0.0;
  CHECK_THROWS(validate(c));
}

TEST_CASE("zero data converges in one iteration") {
  const Grid g(64, 20.0);
  const SolverState st = picard_solve(SpectralField::zeros(g), SolverConfig{});
  CHECK(st.converged());
  CHECK(st.iterations == 1);
  CHECK(max_abs(st.solution.at(st.delta).values) == 0.0);
}

TEST_CASE("linear Duhamel step reproduces the Airy flow") {
  const Grid g(64, 20.0);
  const auto u0 = gaussian(g, 0.3);
  SolverConfig c;
  const TimeSeries lin = duhamel_step(TimeSeries::constant(u0, c.delta, 2), u0, c, true);
  const auto a = lin.at(0.7 * c.delta), b = airy_propagate(u0, 0.7 * c.delta);
  CHECK(max_abs_diff(a.values, b.values) < 1e-12);
}

TEST_CASE("Picard solution matches an RK4 reference") {
  const Grid g(64, 20.0);
  const auto u0 = gaussian(g, 0.4);
  for (double delta : {0.05, 0.025}) {
    SolverConfig c;
    c.delta = delta;
    const SolverState st = picard_solve(u0, c);
    REQUIRE(st.converged());
    CHECK(st.residual < 1e-6);
    const auto ref = rk4(g, u0, delta, 400, 1);
    CHECK(max_abs_diff(st.solution.at(delta).values, ref) < 1e-8 * max_abs(ref));
  }
}

TEST_CASE("small Gaussian converges in both signs and conserves mass") {
  const Grid g(128, 40.0);
  auto u0 = gaussian(g, 1.0);
  const double n = fl_norm(u0, FLParams(2.0, 0.25));
  for (auto& v : u0.values) v *= 0.1 / n;
  for (int sign : {1, -1}) {
    SolverConfig c;
    c.sign = sign;
    const SolverState st = picard_solve(u0, c);
    CHECK(st.converged());
    CHECK(st.residual < 1e-6);
    for (std::size_t k = 1; k < st.contraction_factors.size(); ++k) CHECK(st.contraction_factors[k] < 1.0);
    const auto cons = conservation_check(st);
    CHECK(cons.mass_drift < 1e-8);
    CHECK(cons.l2_drift < 1e-8);
  }
}

TEST_CASE("soliton is tracked") {
  const Grid g(256, 40.0);
  const double c = 1.0;
  SolverConfig cfg;
  const Evolution ev = evolve(soliton(g, c, 0.0), cfg, 0.1, {0.1});
  REQUIRE(ev.converged);
  const auto exact = soliton(g, c, c * 0.1);
  double e = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) e += std::norm(exact.values[i] - ev.states[0].values[i]);
  CHECK(std::sqrt(e * g.dxi() / kTwoPi) < 1e-3);
}

TEST_CASE("dilation maps solutions to solutions") {
  // u_l(x, t) = l u(l x, l^3 t): same frequency arrays on the dilated grid
  const Grid g(64, 20.0);
  const auto u0 = gaussian(g, 0.5);
  const double l = 2.0;
  const auto ul = dilate(u0, l);
  CHECK(ul.grid.length() == doctest::Approx(10.0));
  CHECK(max_abs_diff(ul.values, u0.values) < 1e-14);
  SolverConfig a, b;
  a.delta = 0.04, a.panels = 4;
  b.delta = 0.04 / (l * l * l), b.panels = 4;
  const SolverState sa = picard_solve(u0, a), sb = picard_solve(ul, b);
  REQUIRE(sa.converged());
  REQUIRE(sb.converged());
  CHECK(max_abs_diff(sa.solution.at(a.delta).values, sb.solution.at(b.delta).values) < 1e-9);
}

TEST_CASE("flow map is Lipschitz on small data") {
  const Grid g(64, 20.0);
  const auto u0 = gaussian(g, 0.3), v0 = gaussian(g, 0.31, 1.05);
  SolverConfig c;
  const LipschitzResult r = flowmap_lipschitz_probe(u0, v0, c);
  CHECK(r.converged);
  CHECK_FALSE(r.degenerate);
  CHECK(std::isfinite(r.ratio));
  CHECK(r.ratio > 0.0);
  CHECK(flowmap_lipschitz_probe(u0, u0, c).degenerate);
}

TEST_CASE("large data reports divergence instead of a solution") {
  const Grid g(64, 20.0);
  SolverConfig c;
  c.delta = 2.0, c.max_iter = 40, c.panels = 8;
  const SolverState st = picard_solve(gaussian(g, 20.0), c);
  CHECK_FALSE(st.converged());
}
