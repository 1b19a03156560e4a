#pragma once

// Space-time spectra of products of (time-enveloped) Airy flows on a grid.
//
// For u_i(x, t) = psi_i(t) [e^{-t d^3} u0_i](x) the product has
//   F(prod u_i)(xi, tau) = sum_{xi_1 + .. = xi} m(xi_1, ..) Psi^(tau - theta),
// theta = sum xi_i^3, Psi = prod psi_i. Masses are deposited per output mode
// into fine tau bins (cloud-in-cell) and the Gaussian Psi^ is applied by a
// tabulated convolution.

#include <functional>
#include <vector>

#include "airylab/airy_products.hpp"
#include "airylab/spectral_core.hpp"

namespace airylab {

// Psi^(tau) = amplitude * exp(-(tau - shift)^2 / (2 width^2)).
struct TauKernel {
  double width = 1.0;
  double shift = 0.0;
  double amplitude() const;  // sqrt(2 pi) / width, i.e. Psi(0) = 1
  double operator()(double tau) const;
};

// Gaussian time envelope psi(t) = exp(i sigma t) exp(-t^2 / (2 w^2)).
struct Envelope {
  double width = 1.0;
  double modulation = 0.0;
  double hat(double sigma) const;  // w sqrt(2 pi) exp(-w^2 (sigma - modulation)^2 / 2)
};

// Kernel of the product of the given envelopes.
TauKernel product_kernel(const std::vector<Envelope>& envs);

// || <sigma>^b psi^(sigma) ||_{L^{e}(d sigma / 2 pi)}, e may be infinite.
double envelope_norm(const Envelope& e, double exponent, double b);

class SpectrumRows {
 public:
  SpectrumRows(const Grid& g, double tau_lo, double tau_hi, TauKernel k);

  const Grid& grid() const { return grid_; }
  const TauKernel& kernel() const { return kernel_; }
  void deposit(std::size_t row, double theta, cd mass);

  // Smoothed spectrum on the lattice tau_lo + j * step() of row i.
  std::vector<cd> lattice(std::size_t row) const;
  double step() const { return 4.0 * bin_; }
  double lattice_origin() const { return lo_; }
  cd value(std::size_t row, double tau) const;

  // ( int |w(tau - xi^3) F(xi, tau)|^e dtau / 2pi )^{1/e}; e may be infinite.
  // A non-empty weight is resolved on a fine mesh near sigma = 0.
  double row_norm(std::size_t row, double exponent, const std::function<double(double)>& sigma_weight = {}) const;

  bool row_empty(std::size_t row) const { return !touched_[row]; }

 private:
  Grid grid_;
  TauKernel kernel_;
  double lo_, bin_;
  std::size_t nbins_;
  std::vector<cd> bins_;  // row-major
  std::vector<char> touched_;
  std::vector<double> table_;  // kernel at multiples of bin_
};

using PairWeight = std::function<double(double xi1, double xi2)>;

// Deposits m = w(xi1, xi2) u^(xi1) v^(xi2) dxi/2pi at theta = xi1^3 + xi2^3.
void deposit_pairs(SpectrumRows& rows, const SpectralField& u0, const SpectralField& v0, const PairWeight& w = {});

// Deposits m = u^ v^ w^ (dxi/2pi)^2 at theta = sum xi_i^3 for admissible triples.
void deposit_triples(SpectrumRows& rows, const SpectralField& u0, const SpectralField& v0, const SpectralField& w0,
                     TrilinearMask mask, const RegionConstants& c = {});

// Output rows assembled into ( sum_xi (rw(xi) ||F(xi, .)||_{inner})^{outer} dxi/2pi )^{1/outer}.
double spectrum_norm(const SpectrumRows& rows, double inner, double outer, const std::function<double(double)>& row_weight,
                     const std::function<double(double)>& sigma_weight = {});

// Pure Airy products without a time cutoff: the delta measure in tau is
// resolved exactly. Each grid cell of the (xi1, xi2) plane is split into two
// triangles on which theta is linear and the mass constant, so each triangle
// pushes forward to a tent density; the tents are integrated over tau bins.
class DensityRows {
 public:
  DensityRows(const Grid& g, double bin);

  const Grid& grid() const { return grid_; }
  double bin() const { return bin_; }
  // Mass spread over the tent with corners a, b, c (any order).
  void deposit_tent(std::size_t row, double a, double b, double c, cd mass);
  // F(xi, tau) averaged over the bins of row i; lattice origin row_origin(i).
  std::vector<cd> density(std::size_t row) const;
  double row_origin(std::size_t row) const { return bin_ * static_cast<double>(offset_[row]); }
  double row_norm(std::size_t row, double exponent) const;

 private:
  Grid grid_;
  double bin_;
  std::vector<long> offset_;
  std::vector<std::vector<cd>> rows_;
  cd* slot(std::size_t row, long j);
};

void resolve_triples(DensityRows& rows, const SpectralField& u0, const SpectralField& v0, const SpectralField& w0,
                     TrilinearMask mask, const RegionConstants& c = {});

double density_norm(const DensityRows& rows, double inner, double outer);

}  // namespace airylab
