#include "airylab/airy_products.hpp"

#include <algorithm>
#include <cmath>

namespace airylab {

PairBranch pair_branch(double xi, double tau) {
  PairBranch b{xi, tau, 0.0, false};
  if (xi == 0.0) return b;
  const double arg = tau / (3.0 * xi) - xi * xi / 12.0;
  if (arg > 0.0) {
    b.y = 2.0 * std::sqrt(arg);
    b.admissible = true;
  }
  return b;
}

double pair_tau(double xi, double y) { return 0.75 * xi * y * y + 0.25 * xi * xi * xi; }

double pair_jacobian(double xi, double y) { return 1.5 * std::abs(xi) * y; }

SpectrumValue pair_spectrum(const SpectralField& u0, const SpectralField& v0, double xi, double tau, double y_min) {
  require_same_grid(u0.grid, v0.grid, "pair_spectrum");
  if (xi == 0.0) throw std::domain_error("pair_spectrum: xi must be nonzero");
  if (y_min <= 0.0) y_min = 0.25 * u0.grid.dxi();
  SpectrumValue out;
  const PairBranch b = pair_branch(xi, tau);
  if (!b.admissible) return out;
  out.admissible = true;
  if (b.y < y_min) {
    out.singular = true;
    return out;
  }
  const SpectralField uh = to_frequency(u0);
  const SpectralField vh = to_frequency(v0);
  const double p = b.xi1(+1);
  const double m = b.xi1(-1);
  out.value = (uh.at(p) * vh.at(m) + uh.at(m) * vh.at(p)) / b.derivative();
  return out;
}

std::vector<double> pair_norm_formula(const SpectralField& u0, const SpectralField& v0, const MixedParams& p,
                                      const PairWeights& weights) {
  require_same_grid(u0.grid, v0.grid, "pair_norm_formula");
  const Grid& g = u0.grid;
  SpectralField uh = weights.u ? apply_multiplier(u0, *weights.u) : to_frequency(u0);
  SpectralField vh = weights.v ? apply_multiplier(v0, *weights.v) : to_frequency(v0);
  const double pc = p.p_conj();
  const std::size_t n = g.size();
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = std::abs(uh.values[i]);
    b[i] = std::abs(vh.values[i]);
  }
  const bool sup = std::isinf(pc);
  if (!sup) {
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::pow(a[i], pc);
      b[i] = std::pow(b[i], pc);
    }
  }
  const double cell = g.dxi() / kTwoPi;
  std::vector<double> out(n, 0.0);
  const long half = static_cast<long>(n / 2);
  for (std::size_t k = 0; k < n; ++k) {
    const long kk = g.mode(k);
    double acc = 0.0;
    for (std::size_t i1 = 0; i1 < n; ++i1) {
      const long k2 = kk - g.mode(i1);
      if (k2 < -half || k2 >= half) continue;
      const double term = a[i1] * b[static_cast<std::size_t>(k2 + half)];
      acc = sup ? std::max(acc, term) : acc + term;
    }
    out[k] = sup ? acc : std::pow(acc * cell, 1.0 / pc);
  }
  return out;
}

TripleBranch triple_branch(double xi, double tau, double xi1) {
  TripleBranch b{xi, tau, xi1, 0.0, false};
  const auto y = triple_y(xi, tau, xi1);
  if (y) {
    b.y = *y;
    b.admissible = true;
  }
  return b;
}

std::optional<double> triple_y(double xi, double tau, double xi1) {
  const double a = xi - xi1;
  if (a == 0.0) return std::nullopt;
  const double y2 = 0.25 * (xi + xi1) * (xi + xi1) + (tau - xi * xi * xi) / (3.0 * a);
  if (!(y2 > 0.0)) return std::nullopt;
  return std::sqrt(y2);
}

bool in_region_i(double xi1, double xi2, double xi3, const RegionConstants& c) {
  const double a1 = std::abs(xi1);
  const double a2 = std::abs(xi2);
  if (a1 == 0.0 || a2 == 0.0) return false;
  const double ratio = a1 / a2;
  if (ratio < 1.0 / c.ratio || ratio > c.ratio) return false;
  return std::min(a1, a2) >= c.separation * std::sqrt(1.0 + xi3 * xi3);
}

bool in_region_ii(double, double xi2, double xi3) { return std::abs(xi2 - xi3) >= std::abs(xi2 + xi3); }

bool in_region_iii(double, double xi2, double xi3) {
  const double d = std::abs(xi2 - xi3);
  return d >= 1.0 && d <= std::abs(xi2 + xi3);
}

Region region_mask(double xi1, double xi2, double xi3, const RegionConstants& c) {
  if (in_region_i(xi1, xi2, xi3, c)) return Region::i;
  if (in_region_ii(xi1, xi2, xi3)) return Region::ii;
  if (in_region_iii(xi1, xi2, xi3)) return Region::iii;
  return Region::none;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::i: return "i";
    case Region::ii: return "ii";
    case Region::iii: return "iii";
    case Region::none: return "none";
  }
  return "none";
}

bool mask_contains(TrilinearMask m, double xi1, double xi2, double xi3, const RegionConstants& c) {
  switch (m) {
    case TrilinearMask::T: return in_region_i(xi1, xi2, xi3, c);
    case TrilinearMask::T_ge: return in_region_ii(xi1, xi2, xi3);
    case TrilinearMask::T_le: return in_region_iii(xi1, xi2, xi3);
    case TrilinearMask::unmasked: return true;
  }
  return false;
}

const char* mask_name(TrilinearMask m) {
  switch (m) {
    case TrilinearMask::T: return "T";
    case TrilinearMask::T_ge: return "T_ge";
    case TrilinearMask::T_le: return "T_le";
    case TrilinearMask::unmasked: return "unmasked";
  }
  return "unmasked";
}

namespace {

struct TripleSum {
  cd value{};
  double excluded = 0.0;  // modelled mass of the excluded singular cells
};

TripleSum triple_sum(const SpectralField& uh, const SpectralField& vh, const SpectralField& wh, double xi, double tau,
                     TrilinearMask mask, double step, double y_min, double eps_q) {
  // The integrand is num / (6 |xi - xi1| y) = num / (6 sqrt(Z)) with
  //   Z(xi1) = (xi - xi1)^2 y^2 = (xi - xi1)^2 (xi + xi1)^2 / 4 + (tau - xi^3)(xi - xi1) / 3,
  // a polynomial. Its simple zeros are the integrable endpoints, so each cell
  // takes Z linear and integrates 1/sqrt(Z) exactly; num is sampled once.
  TripleSum s;
  const double lo = uh.grid.xi(0);
  const double hi = uh.grid.xi(uh.grid.size() - 1);
  const double c = (tau - xi * xi * xi) / 3.0;
  auto Z = [&](double x1) {
    const double d = xi - x1, e = xi + x1;
    return 0.25 * d * d * e * e + c * d;
  };
  // int dx / sqrt(Z) over the part of [0, h] where the linear model exceeds cut.
  auto weight = [](double za, double zb, double h, double cut, double* t_lo, double* t_hi) {
    const double zmin = std::min(za, zb), zmax = std::max(za, zb);
    if (zmax <= cut) return 0.0;
    const double z1 = std::max(zmin, cut);
    double f0 = 0.0, f1 = 1.0;
    if (zb != za) {
      f0 = (z1 - za) / (zb - za), f1 = (zmax - za) / (zb - za);
      if (f0 > f1) std::swap(f0, f1);
    }
    *t_lo = f0, *t_hi = f1;
    if (zmax - zmin <= 1e-14 * zmax) return h / std::sqrt(zmax);
    return 2.0 * h * (zmax - z1) / ((zmax - zmin) * (std::sqrt(zmax) + std::sqrt(z1)));
  };
  const long count = static_cast<long>(std::ceil((hi - lo) / step));
  double za = Z(lo);
  for (long k = 0; k < count; ++k) {
    const double a = lo + static_cast<double>(k) * step;
    const double zb = Z(a + step);
    const double z_prev = za;
    za = zb;
    double t0 = 0.0, t1 = 1.0;
    const double w_all = weight(z_prev, zb, step, 0.0, &t0, &t1);
    if (w_all == 0.0) continue;
    const double xm = a + 0.5 * (t0 + t1) * step;
    const cd u = uh.at(xm);
    if (u == cd{}) continue;
    const double gap = std::abs(xi - xm);
    if (gap == 0.0) continue;
    const double y = std::sqrt(std::max(Z(xm), 0.0)) / gap;
    const double cut = y_min * y_min * gap * gap;
    double u0 = 0.0, u1 = 1.0;
    const double w_in = gap < eps_q ? 0.0 : weight(z_prev, zb, step, cut, &u0, &u1);
    for (int sign : {+1, -1}) {
      const double x2 = 0.5 * (xi - xm) + sign * y;
      const double x3 = 0.5 * (xi - xm) - sign * y;
      if (!mask_contains(mask, xm, x2, x3)) continue;
      const cd num = u * vh.at(x2) * wh.at(x3);
      if (num == cd{}) continue;
      s.value += num * w_in / 6.0;
      s.excluded += std::abs(num) * (w_all - w_in) / 6.0;
    }
  }
  s.value /= kTwoPi;
  s.excluded /= kTwoPi;
  return s;
}

}  // namespace

SpectrumValue triple_spectrum(const SpectralField& u0, const SpectralField& v0, const SpectralField& w0, double xi,
                              double tau, TrilinearMask mask, const TripleQuadrature& q) {
  require_same_grid(u0.grid, v0.grid, "triple_spectrum");
  require_same_grid(u0.grid, w0.grid, "triple_spectrum");
  const double dxi = u0.grid.dxi();
  const double step = q.step > 0.0 ? q.step : dxi / 8.0;
  const double y_min = q.y_min > 0.0 ? q.y_min : dxi / 64.0;
  const double eps_q = q.eps_q > 0.0 ? q.eps_q : dxi / 64.0;
  const SpectralField uh = to_frequency(u0);
  const SpectralField vh = to_frequency(v0);
  const SpectralField wh = to_frequency(w0);

  const TripleSum fine = triple_sum(uh, vh, wh, xi, tau, mask, step, y_min, eps_q);
  const TripleSum coarse = triple_sum(uh, vh, wh, xi, tau, mask, 2.0 * step, y_min, eps_q);

  SpectrumValue out;
  out.value = fine.value;
  out.admissible = true;
  out.error_estimate = std::abs(fine.value - coarse.value) + fine.excluded;
  if (out.error_estimate > q.rel_tol * std::abs(fine.value) + q.abs_tol) out.singular = true;
  return out;
}

double level_set_measure(double xi, double tau, double y_lo, double y_hi, double samples_per_unit) {
  // y >= |xi + xi1|/2 - sqrt(|tau - xi^3| / (3|xi - xi1|)) bounds the relevant xi1.
  const double reach = std::abs(xi) + 2.0 * y_hi + 2.0 * std::cbrt(std::abs(tau - xi * xi * xi)) + 4.0;
  const double h = 1.0 / samples_per_unit;
  const long count = static_cast<long>(std::ceil(2.0 * reach * samples_per_unit));
  double measure = 0.0;
  for (long k = 0; k < count; ++k) {
    const double xi1 = -reach + (static_cast<double>(k) + 0.5) * h;
    const auto y = triple_y(xi, tau, xi1);
    if (y && *y >= y_lo && *y < y_hi) measure += h;
  }
  return measure;
}

double dyadic_measure_probe(double xi, double tau, int j, double samples_per_unit) {
  const double lo = std::ldexp(1.0, j);
  return level_set_measure(xi, tau, lo, 2.0 * lo, samples_per_unit);
}

double resonance_function(double xi1, double xi2, double xi3) {
  const double xi = xi1 + xi2 + xi3;
  return xi * xi * xi - xi1 * xi1 * xi1 - xi2 * xi2 * xi2 - xi3 * xi3 * xi3;
}

double resonance_factored(double xi1, double xi2, double xi3) {
  return 3.0 * (xi1 + xi2) * (xi2 + xi3) * (xi3 + xi1);
}

}  // namespace airylab
