#pragma once

// The resonant-region integral over the projected set where all three input
// frequencies are within distance 1 of each other, and the sigma-gain
// factor of the semi-resonant case.

#include <cstdint>
#include <vector>

#include "airylab/airy_products.hpp"

namespace airylab {

struct ResonantIntegral {
  double value = 0.0;
  double error_estimate = 0.0;
  bool flagged = false;  // requested tolerance not met
};

// int over A' of <tau - xi^3 + 3 (xi1 + xi2)(xi - xi1)(xi - xi2)>^{-1-eps} dxi1 dxi2
// with A' = { |xi_i - xi_j| <= 1, max(1, |xi|/6) <= |xi_i| <= |xi| }.
// Nested adaptive Gauss-Kronrod in x1 = xi1 + xi2 - 2 xi/3, x2 = xi1 - xi2.
ResonantIntegral resonant_integral(double xi, double tau, double eps, double rel_tol = 1e-6);

// Plain Monte-Carlo estimate of the same integral (uniform samples on the
// bounding box of A'); used to cross-check the quadrature.
double resonant_integral_mc(double xi, double tau, double eps, std::size_t samples, std::uint64_t seed);

struct ResonantSup {
  double tau = 0.0;
  double value = 0.0;
};

// sup over tau at fixed xi; the maximiser lies in a window of width O(|xi|)
// around xi^3 / 9 where the phase has its stationary point.
ResonantSup resonant_sup(double xi, double eps, int scan_points = 33);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
};
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct SpaceTimeFreq {
  double xi = 0.0;
  double tau = 0.0;
};

// True when (xi1, xi2, xi3) lies in the semi-resonant case with
// |xi1 + xi2| >= 1 after ordering |xi1| >= |xi2| >= |xi3|.
bool semi_resonant_admissible(double xi1, double xi2, double xi3, const RegionConstants& c = {});

// <xi1>^eps <xi2>^eps / prod_{i=0..3} <sigma_i>^eps with sigma_0 = tau - xi^3
// for the summed frequency, sigma_i = tau_i - xi_i^3.
double sigma_gain_check(const SpaceTimeFreq& a, const SpaceTimeFreq& b, const SpaceTimeFreq& c, double eps);

struct SigmaGainSweep {
  double max_factor = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t all_sigma_zero = 0;  // must stay 0
};

SigmaGainSweep sigma_gain_sweep(std::size_t samples, std::uint64_t seed, double eps, const RegionConstants& c = {});

}  // namespace airylab
