#pragma once

// Delta-resolved space-time spectra of products of two and three Airy flows.
//
// With the conventions of spectral_core, for u(t) = e^{-t d^3} u0 etc.
//   F(uv)(xi, tau)  = int dxi1 delta(tau - xi1^3 - xi2^3) u0^(xi1) v0^(xi2)
//   F(uvw)(xi, tau) = (1/2pi) int dxi1 dxi2 delta(tau - xi1^3 - xi2^3 - xi3^3) u0^ v0^ w0^
// and resolving the delta in xi1 (pair) or xi2 (triple) gives the closed forms
// implemented here. Off-grid data values are linearly interpolated.

#include <optional>
#include <vector>

#include "airylab/norms.hpp"
#include "airylab/spectral_core.hpp"

namespace airylab {

// Zeros xi1 = (xi +- y)/2 of tau - xi1^3 - (xi - xi1)^3, y = 2 sqrt(tau/(3xi) - xi^2/12).
struct PairBranch {
  double xi = 0.0;
  double tau = 0.0;
  double y = 0.0;           // 0 when not admissible
  bool admissible = false;  // y^2 > 0

  double xi1(int sign) const { return 0.5 * (xi + sign * y); }
  // |g'(xi1^+-)| = 3 |xi| y
  double derivative() const { return 3.0 * std::abs(xi) * y; }
};

PairBranch pair_branch(double xi, double tau);

// tau as a function of the resonance coordinate and dtau/dy = (3/2)|xi| y.
double pair_tau(double xi, double y);
double pair_jacobian(double xi, double y);

struct SpectrumValue {
  cd value{};
  bool admissible = false;
  bool singular = false;  // y below the exclusion radius; value reported as 0
  double error_estimate = 0.0;
};

// F(uv)(xi, tau) = [u0^(xi1+) v0^(xi1-) + u0^(xi1-) v0^(xi1+)] / (3 |xi| y).
// y_min <= 0 selects the default exclusion radius dxi/4.
SpectrumValue pair_spectrum(const SpectralField& u0, const SpectralField& v0, double xi, double tau,
                            double y_min = -1.0);

// Per output mode xi_k: ( int |A u0^|^{p'}(xi1) |B v0^|^{p'}(xi - xi1) dxi1/2pi )^{1/p'}
// with optional multipliers A, B applied to the data first. Output modes that
// fall off the grid are dropped; p = 1 (p' = inf) gives the sup-convolution.
struct PairWeights {
  std::optional<MultiplierSpec> u;
  std::optional<MultiplierSpec> v;
};
std::vector<double> pair_norm_formula(const SpectralField& u0, const SpectralField& v0, const MixedParams& p,
                                      const PairWeights& weights = {});

// Zeros xi2 = (xi - xi1)/2 +- y of the triple phase at fixed xi1, with
// y = sqrt((xi + xi1)^2/4 + (tau - xi^3)/(3 (xi - xi1))).
struct TripleBranch {
  double xi = 0.0;
  double tau = 0.0;
  double xi1 = 0.0;
  double y = 0.0;
  bool admissible = false;

  double xi2(int sign) const { return 0.5 * (xi - xi1) + sign * y; }
  double xi3(int sign) const { return 0.5 * (xi - xi1) - sign * y; }
  // |g'(xi2^+-)| = 6 |xi - xi1| y
  double derivative() const { return 6.0 * std::abs(xi - xi1) * y; }
};

TripleBranch triple_branch(double xi, double tau, double xi1);

// Frequency regions of the trilinear analysis.
//   i:   |xi1| ~ |xi2| >> <xi3>
//   ii:  |xi2 - xi3| >= |xi2 + xi3|
//   iii: 1 <= |xi2 - xi3| <= |xi2 + xi3|
// "~" is |xi1/xi2| in [1/ratio, ratio]; ">>" is min(|xi1|,|xi2|) >= separation * <xi3>.
enum class Region { i, ii, iii, none };

struct RegionConstants {
  double ratio = 2.0;
  double separation = 10.0;
};

bool in_region_i(double xi1, double xi2, double xi3, const RegionConstants& c = {});
bool in_region_ii(double xi1, double xi2, double xi3);
bool in_region_iii(double xi1, double xi2, double xi3);

// Partition with precedence i, then ii, then iii. Ties |xi2-xi3| = |xi2+xi3|
// land in ii, as printed.
Region region_mask(double xi1, double xi2, double xi3, const RegionConstants& c = {});
const char* region_name(Region r);

// Indicator sets of the trilinear operators T, T>=, T<= (printed conditions,
// not the partition) plus the unmasked product.
enum class TrilinearMask { T, T_ge, T_le, unmasked };
bool mask_contains(TrilinearMask m, double xi1, double xi2, double xi3, const RegionConstants& c = {});
const char* mask_name(TrilinearMask m);

struct TripleQuadrature {
  double step = -1.0;    // xi1 step; <= 0 means dxi/8
  double y_min = -1.0;   // <= 0 means dxi/64
  double eps_q = -1.0;   // <= 0 means dxi/64
  double rel_tol = 0.05;
  double abs_tol = 1e-12;
};

// K_+ + K_- restricted to `mask`, with a step-halving plus excluded-mass error
// estimate. Non-convergence is reported through `singular = true` with the
// estimate attached, never silently.
SpectrumValue triple_spectrum(const SpectralField& u0, const SpectralField& v0, const SpectralField& w0, double xi,
                              double tau, TrilinearMask mask = TrilinearMask::unmasked,
                              const TripleQuadrature& q = {});

// y(xi1) of the triple branch, or nullopt when not admissible.
std::optional<double> triple_y(double xi, double tau, double xi1);

// Lebesgue measure of {xi1 : y(xi1) in [y_lo, y_hi)} by midpoint sampling on
// [-R, R] with the given number of samples per unit length.
double level_set_measure(double xi, double tau, double y_lo, double y_hi, double samples_per_unit = 2000.0);

// Measure of the dyadic shell y ~ 2^j, i.e. y in [2^j, 2^{j+1}).
double dyadic_measure_probe(double xi, double tau, int j, double samples_per_unit = 2000.0);

// sigma_0 - sigma_1 - sigma_2 - sigma_3 on the convolution constraint and its
// factored form 3 (xi1 + xi2)(xi2 + xi3)(xi3 + xi1).
double resonance_function(double xi1, double xi2, double xi3);
double resonance_factored(double xi1, double xi2, double xi3);

}  // namespace airylab
