#include "airylab/resonance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

namespace airylab {

namespace {

double bracket(double v) { return std::sqrt(1.0 + v * v); }

struct Phase {
  double xi, tau;
  // tau - xi^3 + 3 z(x1, x2)
  double operator()(double x1, double x2) const {
    const double a = 2.0 * xi / 3.0;
    const double z = (x1 + a) * ((x1 - 2.0 * a) * (x1 - 2.0 * a) - x2 * x2) / 4.0;
    return tau - xi * xi * xi + 3.0 * z;
  }
};

// Real roots of c3 x^3 + c2 x^2 + c1 x + c0 inside (lo, hi), found by
// bracketing on a sample grid plus the critical points.
std::vector<double> cubic_breaks(const Phase& ph, double x2, double lo, double hi) {
  std::vector<double> pts{lo, hi};
  // Critical points of the phase in x1: 3x^2 - 6 a x - x2^2 (scaled), a = 2 xi/3.
  const double a = 2.0 * ph.xi / 3.0;
  const double disc = 36.0 * a * a + 12.0 * x2 * x2;
  for (double s : {-1.0, 1.0}) {
    const double c = (6.0 * a + s * std::sqrt(disc)) / 6.0;
    if (c > lo && c < hi) pts.push_back(c);
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out = pts;
  auto f = [&](double x) { return ph(x, x2); };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double fa = f(pts[i]), fb = f(pts[i + 1]);
    if (fa == 0.0 || fa * fb > 0.0) continue;
    boost::uintmax_t iters = 100;
    auto r = boost::math::tools::bisect(f, pts[i], pts[i + 1], boost::math::tools::eps_tolerance<double>(40), iters);
    out.push_back(0.5 * (r.first + r.second));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Admissibility of a point in x-coordinates: the magnitude constraints on xi_i.
bool magnitudes_ok(double xi, double x1, double x2) {
  const double m = std::max(1.0, std::abs(xi) / 6.0);
  const std::array<double, 3> f{(x1 + x2) / 2.0 + xi / 3.0, (x1 - x2) / 2.0 + xi / 3.0, xi / 3.0 - x1};
  for (double v : f)
    if (std::abs(v) < m || std::abs(v) > std::abs(xi)) return false;
  return true;
}

// Points in x1 where some |xi_i| crosses m or |xi|.
void magnitude_breaks(double xi, double x2, double lo, double hi, std::vector<double>& pts) {
  const double m = std::max(1.0, std::abs(xi) / 6.0);
  for (double level : {m, -m, std::abs(xi), -std::abs(xi)}) {
    const std::array<double, 3> x{2.0 * (level - xi / 3.0) - x2, 2.0 * (level - xi / 3.0) + x2, xi / 3.0 - level};
    for (double v : x)
      if (v > lo && v < hi) pts.push_back(v);
  }
}

}  // namespace

ResonantIntegral resonant_integral(double xi, double tau, double eps, double rel_tol) {
  if (!(eps > 0.0)) throw std::domain_error("resonant_integral: eps must be positive");
  ResonantIntegral out;
  if (std::abs(xi) <= 1.0) return out;
  const Phase ph{xi, tau};
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  double err_sum = 0.0;
  auto inner = [&](double x2) {
    const double lo = (-2.0 + std::abs(x2)) / 3.0;
    const double hi = (2.0 - std::abs(x2)) / 3.0;
    if (hi <= lo) return 0.0;
    auto pts = cubic_breaks(ph, x2, lo, hi);
    magnitude_breaks(xi, x2, lo, hi, pts);
    std::sort(pts.begin(), pts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double a = pts[i], b = pts[i + 1];
      if (b - a <= 0.0) continue;
      if (!magnitudes_ok(xi, 0.5 * (a + b), x2)) continue;
      double err = 0.0;
      acc += GK::integrate([&](double x1) { return std::pow(bracket(ph(x1, x2)), -1.0 - eps); }, a, b, 15,
                           rel_tol * 0.1, &err);
      err_sum += err;
    }
    return acc;
  };
  double err = 0.0;
  const double v = GK::integrate(inner, -1.0, 0.0, 12, rel_tol, &err) + GK::integrate(inner, 0.0, 1.0, 12, rel_tol, &err);
  out.value = 0.5 * v;  // d xi1 d xi2 = (1/2) dx1 dx2
  out.error_estimate = 0.5 * err + 1e-3 * err_sum;
  out.flagged = out.value > 0.0 && out.error_estimate > 10.0 * rel_tol * out.value;
  return out;
}

double resonant_integral_mc(double xi, double tau, double eps, std::size_t samples, std::uint64_t seed) {
  if (std::abs(xi) <= 1.0) return 0.0;
  const Phase ph{xi, tau};
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u1(-2.0 / 3.0, 2.0 / 3.0), u2(-1.0, 1.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x1 = u1(gen), x2 = u2(gen);
    if (std::abs(3.0 * x1 + x2) > 2.0 || std::abs(3.0 * x1 - x2) > 2.0) continue;
    if (!magnitudes_ok(xi, x1, x2)) continue;
    acc += std::pow(bracket(ph(x1, x2)), -1.0 - eps);
  }
  const double box = (4.0 / 3.0) * 2.0;
  return 0.5 * box * acc / static_cast<double>(samples);
}

ResonantSup resonant_sup(double xi, double eps, int scan_points) {
  const double center = xi * xi * xi / 9.0;
  const double sgn = xi >= 0 ? 1.0 : -1.0;
  // d = sgn (tau - xi^3/9); level sets of the phase are ellipses for d > 0
  const double lo = -0.25 * std::abs(xi), hi = 1.25 * std::abs(xi);
  auto value = [&](double d) { return resonant_integral(xi, center + sgn * d, eps, 1e-5).value; };
  ResonantSup best;
  double best_d = lo;
  best.value = -1.0;
  const double step = (hi - lo) / (scan_points - 1);
  for (int i = 0; i < scan_points; ++i) {
    const double d = lo + step * i;
    const double v = value(d);
    if (v > best.value) {
      best.value = v;
      best_d = d;
    }
  }
  // golden-section refinement on the bracketing cells
  double a = best_d - step, b = best_d + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = value(c), fd = value(d);
  for (int it = 0; it < 30 && b - a > 1e-4 * std::abs(xi); ++it) {
    if (fc > fd) {
      b = d, d = c, fd = fc, c = b - g * (b - a), fc = value(c);
    } else {
      a = c, c = d, fc = fd, d = a + g * (b - a), fd = value(d);
    }
  }
  const double m = 0.5 * (a + b);
  const double vm = value(m);
  if (vm > best.value) {
    best.value = vm;
    best_d = m;
  }
  best.tau = center + sgn * best_d;
  return best;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  SlopeFit f;
  f.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / dn;
  return f;
}

bool semi_resonant_admissible(double xi1, double xi2, double xi3, const RegionConstants& c) {
  std::array<double, 3> v{xi1, xi2, xi3};
  std::sort(v.begin(), v.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
  if (std::abs(v[0] + v[1]) < 1.0) return false;
  return in_region_i(v[0], v[1], v[2], c);
}

double sigma_gain_check(const SpaceTimeFreq& a, const SpaceTimeFreq& b, const SpaceTimeFreq& c, double eps) {
  const double xi = a.xi + b.xi + c.xi;
  const double tau = a.tau + b.tau + c.tau;
  double denom = std::pow(bracket(tau - xi * xi * xi), eps);
  for (const auto* f : {&a, &b, &c}) denom *= std::pow(bracket(f->tau - f->xi * f->xi * f->xi), eps);
  return std::pow(bracket(a.xi) * bracket(b.xi), eps) / denom;
}

SigmaGainSweep sigma_gain_sweep(std::size_t samples, std::uint64_t seed, double eps, const RegionConstants& c) {
  SigmaGainSweep out;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto sign = [&] { return unit(gen) < 0.5 ? -1.0 : 1.0; };
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(gen)); };
  for (std::size_t k = 0; k < samples; ++k) {
    const double x1 = sign() * log_uniform(1.0, 1e3);
    const double x2 = sign() * std::abs(x1) * std::pow(c.ratio, 2.0 * unit(gen) - 1.0);
    const double x3 = sign() * log_uniform(1e-3, std::max(2e-3, std::abs(x2) / c.separation));
    if (!semi_resonant_admissible(x1, x2, x3, c)) {
      ++out.rejected;
      continue;
    }
    // sigma_i: exactly zero a third of the time, otherwise log-uniform in [1e-3, 1e3]
    std::array<double, 3> s{};
    for (auto& v : s) v = unit(gen) < 1.0 / 3.0 ? 0.0 : sign() * log_uniform(1e-3, 1e3);
    const SpaceTimeFreq a{x1, x1 * x1 * x1 + s[0]}, b{x2, x2 * x2 * x2 + s[1]}, d{x3, x3 * x3 * x3 + s[2]};
    const double xi = x1 + x2 + x3;
    const double sigma0 = a.tau + b.tau + d.tau - xi * xi * xi;
    if (s[0] == 0.0 && s[1] == 0.0 && s[2] == 0.0 && sigma0 == 0.0) ++out.all_sigma_zero;
    ++out.accepted;
    out.max_factor = std::max(out.max_factor, sigma_gain_check(a, b, d, eps));
  }
  return out;
}

}  // namespace airylab
