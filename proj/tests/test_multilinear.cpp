#include "airylab/multilinear.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace airylab;
using namespace testutil;

namespace {

// out(xi) = sum_{xi1 + xi2 = xi} w(xi1, xi2) f(xi1) g(xi2) dxi/2pi, off-grid outputs dropped.
std::vector<cd> naive_bilinear(const SpectralField& f, const SpectralField& g, const BilinearWeight& w) {
  const Grid& gr = f.grid;
  const long n = static_cast<long>(gr.size());
  std::vector<cd> out(gr.size());
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      const long k = gr.mode(a) + gr.mode(b);
      const long idx = gr.index_of_mode(k);
      if (idx < 0) continue;
      out[idx] += w(gr.xi(a), gr.xi(b)) * f.values[a] * g.values[b] * gr.dxi() / kTwoPi;
    }
  return out;
}

std::vector<cd> naive_trilinear(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                                TrilinearMask m, const RegionConstants& c = {}) {
  const Grid& gr = f.grid;
  const long n = static_cast<long>(gr.size());
  const double cell = gr.dxi() / kTwoPi;
  std::vector<cd> out(gr.size());
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long d = 0; d < n; ++d) {
        const long idx = gr.index_of_mode(gr.mode(a) + gr.mode(b) + gr.mode(d));
        if (idx < 0) continue;
        if (!mask_contains(m, gr.xi(a), gr.xi(b), gr.xi(d), c)) continue;
        out[idx] += f.values[a] * g.values[b] * h.values[d] * cell * cell;
      }
  return out;
}

}  // namespace

TEST_CASE("bilinear weights") {
  CHECK(BilinearWeight{BilinearKind::minus, 1.0}(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(BilinearWeight{BilinearKind::plus, 1.0}(1.0, 2.0) == doctest::Approx(5.0));
  CHECK(BilinearWeight{BilinearKind::minus, -0.5}(1.0, 1.0) == 0.0);
}

TEST_CASE("I_- and I_+ match the naive double loop") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {16, 64}) {
    const Grid g(n, 9.0);
    const auto f = random_field(g, rng), h = random_field(g, rng);
    for (double s : {0.0, 0.5, -0.25, 1.0}) {
      const auto a = i_minus(f, h, s), b = i_plus(f, h, s);
      const auto na = naive_bilinear(f, h, {BilinearKind::minus, s});
      const auto nb = naive_bilinear(f, h, {BilinearKind::plus, s});
      CHECK(max_abs_diff(a.values, na) <= 1e-12 * std::max(1.0, max_abs(na)));
      CHECK(max_abs_diff(b.values, nb) <= 1e-12 * std::max(1.0, max_abs(nb)));
    }
  }
}

TEST_CASE("trilinear operators match the naive triple loop") {
  std::mt19937_64 rng(9);
  for (std::size_t n : {16, 32}) {
    const Grid g(n, 7.0);
    const auto f = random_field(g, rng), h = random_field(g, rng), k = random_field(g, rng);
    for (auto m : {TrilinearMask::T, TrilinearMask::T_ge, TrilinearMask::T_le, TrilinearMask::unmasked}) {
      const auto out = trilinear_apply(f, h, k, m);
      const auto ref = naive_trilinear(f, h, k, m);
      CHECK(max_abs_diff(out.values, ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
    }
  }
}

TEST_CASE("space-time operators act per time sample") {
  std::mt19937_64 rng(13);
  const Grid g(8, 5.0);
  const SpaceTimeGrid st(g, SpaceTimeGrid::min_time_samples(g, 1.0), 1.0);
  auto make = [&] {
    auto f = SpaceTimeField::zeros(st, Side::mixed);
    std::normal_distribution<double> nd;
    for (std::size_t i = 1; i < g.size(); ++i)
      for (std::size_t m = 0; m < st.n_t(); ++m) f(i, m) = cd(nd(rng), nd(rng));
    return f;
  };
  const auto f = make(), h = make();
  const auto out = to_mixed(i_minus(f, h, 0.5));
  for (std::size_t m = 0; m < st.n_t(); m += 5) {
    auto a = SpectralField::zeros(g), b = SpectralField::zeros(g);
    for (std::size_t i = 0; i < g.size(); ++i) a.values[i] = f(i, m), b.values[i] = h(i, m);
    const auto ref = naive_bilinear(a, b, {BilinearKind::minus, 0.5});
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(out(i, m) - ref[i]) < 1e-12 * (1.0 + std::abs(ref[i])));
  }
}

TEST_CASE("I_- and I_+ are formally adjoint") {
  std::mt19937_64 rng(17);
  const Grid g(64, 11.0);
  for (double s : {0.0, 0.5, -0.3}) {
    const auto u = random_field(g, rng), v = random_field(g, rng), w = random_field(g, rng);
    CHECK(adjoint_defect(u, v, w, s) < 1e-10);
  }
}

TEST_CASE("product is the pointwise product for band-limited data") {
  const Grid g(128, 40.0);
  const auto f = freq_gauss(g, 0.0, 1.0, 1.0, 2.0), h = freq_gauss(g, 0.5, 0.8, cd(0.3, 1.0), -1.0);
  const auto pf = to_physical(f), ph = to_physical(h);
  auto pp = pf;
  for (std::size_t j = 0; j < g.size(); ++j) pp.values[j] = pf.values[j] * ph.values[j];
  const auto ref = to_frequency(pp);
  CHECK(max_abs_diff(product(f, h).values, ref.values) < 1e-10);
  auto c3 = pf;
  for (auto& v : c3.values) v = v * v * v;
  // the pointwise cube is aliased at the e^{-xi_max^2/6} level
  CHECK(max_abs_diff(cube(f).values, to_frequency(c3).values) < 1e-7);
}

TEST_CASE("conjugation") {
  const Grid g(32, 10.0);
  const auto f = freq_gauss(g, 1.0, 0.7, cd(1.0, 2.0), 0.4);
  const auto p = to_physical(f);
  auto q = p;
  for (auto& v : q.values) v = std::conj(v);
  CHECK(max_abs_diff(conjugate(f).values, to_frequency(q).values) < 1e-12);
}
