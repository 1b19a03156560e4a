#include "airylab/resonance.hpp"
#include "doctest.h"

using namespace airylab;

TEST_CASE("resonant integral agrees with Monte Carlo") {
  const double xi = 8.0, eps = 0.1;
  for (double tau : {xi * xi * xi, resonant_sup(xi, eps).tau}) {
    const ResonantIntegral q = resonant_integral(xi, tau, eps);
    CHECK_FALSE(q.flagged);
    const double mc = resonant_integral_mc(xi, tau, eps, 400000, 5);
    CHECK(q.value == doctest::Approx(mc).epsilon(0.02));
  }
}

TEST_CASE("resonant domain is empty for small xi") {
  CHECK(resonant_integral(0.5, 0.0, 0.1).value == 0.0);
}

TEST_CASE("sup over tau decays with xi") {
  const ResonantSup a = resonant_sup(8.0, 0.1), b = resonant_sup(32.0, 0.1);
  CHECK(b.value < a.value);
}

TEST_CASE("log-log fit recovers a power law") {
  std::vector<double> x{1, 2, 4, 8}, y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  const SlopeFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(-1.5));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0));
}

TEST_CASE("sigma gain sweep is finite and stable") {
  const SigmaGainSweep a = sigma_gain_sweep(50000, 3, 0.1), b = sigma_gain_sweep(100000, 3, 0.1);
  CHECK(a.all_sigma_zero == 0);
  CHECK(b.all_sigma_zero == 0);
  CHECK(a.accepted > 0);
  CHECK(std::isfinite(b.max_factor));
  CHECK(std::abs(b.max_factor - a.max_factor) <= 0.2 * a.max_factor);
}
