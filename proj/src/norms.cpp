#include "airylab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace airylab {

double conjugate_exponent(double r) {
  if (!(r >= 1.0)) throw std::domain_error("conjugate_exponent: exponent must be >= 1");
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

double lebesgue_sum(std::span<const double> magnitudes, double exponent, double cell) {
  if (std::isinf(exponent)) {
    double m = 0.0;
    for (double v : magnitudes) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  if (exponent == 2.0) {
    for (double v : magnitudes) acc += v * v;
  } else if (exponent == 1.0) {
    for (double v : magnitudes) acc += v;
  } else {
    for (double v : magnitudes)
      if (v > 0.0) acc += std::pow(v, exponent);
  }
  return std::pow(acc * cell, 1.0 / exponent);
}

FLParams::FLParams(double r_, double s_) : r(r_), s(s_) {
  if (!(r > 1.0)) throw std::domain_error("FLParams: r must exceed 1");
  if (!std::isfinite(s)) throw std::domain_error("FLParams: s must be finite");
}

MixedParams::MixedParams(double p_, double q_) : p(p_), q(q_) {
  if (!(p >= 1.0) || !(q >= 1.0)) throw std::domain_error("MixedParams: exponents must be >= 1");
}

XsbParams::XsbParams(double r_, double s_, double b_) : r(r_), s(s_), b(b_) {
  if (!(r > 1.0)) throw std::domain_error("XsbParams: r must exceed 1");
  if (!std::isfinite(s) || !std::isfinite(b)) throw std::domain_error("XsbParams: s, b must be finite");
}

double fl_norm(const SpectralField& u0, const FLParams& p) {
  const SpectralField hat = to_frequency(u0);
  std::vector<double> mag(hat.values.size());
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double xi = hat.grid.xi(i);
    mag[i] = std::pow(1.0 + xi * xi, 0.5 * p.s) * std::abs(hat.values[i]);
  }
  return lebesgue_sum(mag, p.r_conj(), hat.grid.dxi() / kTwoPi);
}

double mixed_fl_norm(const SpaceTimeField& f, const MixedParams& m) {
  if (f.side != Side::frequency) throw std::invalid_argument("mixed_fl_norm: field must be on frequency side");
  const auto& g = f.grid;
  const double pc = m.p_conj();
  const double qc = m.q_conj();
  std::vector<double> row(g.n_t());
  std::vector<double> inner(g.space().size());
  for (std::size_t i = 0; i < g.space().size(); ++i) {
    for (std::size_t k = 0; k < g.n_t(); ++k) row[k] = std::abs(f(i, k));
    inner[i] = lebesgue_sum(row, pc, g.dtau() / kTwoPi);
  }
  return lebesgue_sum(inner, qc, g.space().dxi() / kTwoPi);
}

double xsb_norm(const SpaceTimeField& f, const XsbParams& p) {
  if (f.side != Side::frequency) throw std::invalid_argument("xsb_norm: field must be on frequency side");
  const auto& g = f.grid;
  std::vector<double> mag(f.values.size());
  for (std::size_t i = 0; i < g.space().size(); ++i) {
    const double xi = g.space().xi(i);
    const double wx = std::pow(1.0 + xi * xi, 0.5 * p.s);
    for (std::size_t k = 0; k < g.n_t(); ++k) {
      const double sigma = g.tau(k) - xi * xi * xi;
      mag[i * g.n_t() + k] = wx * std::pow(1.0 + sigma * sigma, 0.5 * p.b) * std::abs(f(i, k));
    }
  }
  return lebesgue_sum(mag, p.r_conj(), g.space().dxi() * g.dtau() / (kTwoPi * kTwoPi));
}

double sr_threshold(double r) {
  if (!(r > 1.0 && r <= 2.0)) throw std::domain_error("sr_threshold: r must lie in (1, 2]");
  return 0.5 - 0.5 / r;
}

double scaling_sigma(double s, double r) {
  if (!(r >= 1.0)) throw std::domain_error("scaling_sigma: r must be >= 1");
  return s - 1.0 / r + 0.5;
}

double lifespan_exponent(double r) {
  if (!(r > 1.0)) throw std::domain_error("lifespan_exponent: r must exceed 1");
  return -2.0 * r / (r - 1.0);
}

}  // namespace airylab
