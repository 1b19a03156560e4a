#pragma once

// Fourier-Lebesgue norms, mixed norms and restriction norms, all as Riemann
// sums over the frequency grid with cell measure dxi/(2 pi) (and dtau/(2 pi)).
// Exponents may be +infinity; the conjugate of 1 is infinity and vice versa,
// and an infinite conjugate exponent is evaluated as an explicit supremum.

#include <limits>
#include <span>

#include "airylab/spectral_core.hpp"

namespace airylab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// 1/r + 1/r' = 1.
double conjugate_exponent(double r);

// (sum |v|^e * cell)^(1/e); e = infinity gives max |v|.
double lebesgue_sum(std::span<const double> magnitudes, double exponent, double cell);

// Data-space exponents (r, s) of the Fourier-Lebesgue space: r in (1, inf].
struct FLParams {
  double r = 2.0;
  double s = 0.0;
  FLParams() = default;
  FLParams(double r_, double s_);
  double r_conj() const { return conjugate_exponent(r); }
};

// Space-time exponents: inner (time) exponent p, outer (space) exponent q,
// both in [1, inf].
struct MixedParams {
  double p = 2.0;
  double q = 2.0;
  MixedParams() = default;
  MixedParams(double p_, double q_);
  double p_conj() const { return conjugate_exponent(p); }
  double q_conj() const { return conjugate_exponent(q); }
};

// Restriction-norm exponents (r, s, b); b may be negative.
struct XsbParams {
  double r = 2.0;
  double s = 0.0;
  double b = 0.0;
  XsbParams() = default;
  XsbParams(double r_, double s_, double b_);
  double r_conj() const { return conjugate_exponent(r); }
};

// || <xi>^s u0^ ||_{L^{r'}}
double fl_norm(const SpectralField& u0, const FLParams& p);

// ( int ( int |f^|^{p'} dtau )^{q'/p'} dxi )^{1/q'}
double mixed_fl_norm(const SpaceTimeField& f, const MixedParams& m);

// ( int <xi>^{s r'} <tau - xi^3>^{b r'} |f^|^{r'} )^{1/r'}
double xsb_norm(const SpaceTimeField& f, const XsbParams& p);

// Regularity threshold of the well-posedness range, 1/2 - 1/(2r), r in (1, 2].
double sr_threshold(double r);

// Sobolev index sigma whose H^sigma shares the scaling of the (r, s) space.
double scaling_sigma(double s, double r);

// Lifespan exponent of delta ~ ||u0||^{kappa}: kappa = -2r/(r-1).
double lifespan_exponent(double r);

}  // namespace airylab
