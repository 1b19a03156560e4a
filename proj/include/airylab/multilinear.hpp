#pragma once

// Weighted bilinear operators, their adjoint pair and the masked trilinear
// operators, acting on grid fields. Convolutions are linear (not cyclic) in
// xi: output modes that fall off the grid are dropped. On space-time fields
// the operators act per time sample (product in t, convolution in xi), which
// on the frequency side is the joint (xi, tau) convolution with a cyclic tau
// axis.

#include "airylab/airy_products.hpp"
#include "airylab/spectral_core.hpp"

namespace airylab {

enum class BilinearKind { minus, plus };

// minus: |xi1 - xi2|^s,  plus: |xi + xi2|^s = |xi1 + 2 xi2|^s.
// A zero base with s != 0 has weight 0 (the Riesz zero-mode convention).
struct BilinearWeight {
  BilinearKind kind = BilinearKind::minus;
  double order = 0.0;
  double operator()(double xi1, double xi2) const;
};

SpectralField bilinear_apply(const SpectralField& f, const SpectralField& g, const BilinearWeight& w);
SpaceTimeField bilinear_apply(const SpaceTimeField& f, const SpaceTimeField& g, const BilinearWeight& w);

inline SpectralField i_minus(const SpectralField& f, const SpectralField& g, double s) {
  return bilinear_apply(f, g, {BilinearKind::minus, s});
}
inline SpectralField i_plus(const SpectralField& f, const SpectralField& g, double s) {
  return bilinear_apply(f, g, {BilinearKind::plus, s});
}
inline SpaceTimeField i_minus(const SpaceTimeField& f, const SpaceTimeField& g, double s) {
  return bilinear_apply(f, g, {BilinearKind::minus, s});
}
inline SpaceTimeField i_plus(const SpaceTimeField& f, const SpaceTimeField& g, double s) {
  return bilinear_apply(f, g, {BilinearKind::plus, s});
}

// Complex conjugate of the physical function: F(conj u)(xi) = conj(F u(-xi)).
// Index reversal is cyclic, so the Nyquist mode maps onto itself.
SpectralField conjugate(const SpectralField& u);
// Space-time version: F(conj u)(xi, tau) = conj(F u(-xi, -tau)).
SpaceTimeField conjugate_flip(const SpaceTimeField& u);

// <f, g> = int f conj(g) dx, evaluated on the frequency side.
cd inner_product(const SpectralField& f, const SpectralField& g);

// |<M_u v, w> - <v, N_u w>| / (||M_u v|| ||w||) with M_u v = I_-^s(u, v) and
// N_u w = I_+^s(w, conj u). Exactly zero up to rounding for fields whose
// Nyquist mode vanishes.
double adjoint_defect(const SpectralField& u, const SpectralField& v, const SpectralField& w, double s);

SpectralField trilinear_apply(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                              TrilinearMask mask, const RegionConstants& c = {});
SpaceTimeField trilinear_apply(const SpaceTimeField& f, const SpaceTimeField& g, const SpaceTimeField& h,
                               TrilinearMask mask, const RegionConstants& c = {});

// Pointwise product of physical functions through a zero-padded transform;
// the frequency-side result equals the unweighted linear convolution.
SpectralField product(const SpectralField& f, const SpectralField& g);
SpectralField cube(const SpectralField& u);

}  // namespace airylab
