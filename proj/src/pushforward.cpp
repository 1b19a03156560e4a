#include "airylab/pushforward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "airylab/norms.hpp"

namespace airylab {

namespace {
constexpr int kBinsPerWidth = 16;
constexpr double kReach = 8.0;  // kernel truncation in widths
}  // namespace

double TauKernel::amplitude() const { return std::sqrt(kTwoPi) / width; }

double TauKernel::operator()(double tau) const {
  const double z = (tau - shift) / width;
  return amplitude() * std::exp(-0.5 * z * z);
}

double Envelope::hat(double sigma) const {
  const double z = width * (sigma - modulation);
  return width * std::sqrt(kTwoPi) * std::exp(-0.5 * z * z);
}

TauKernel product_kernel(const std::vector<Envelope>& envs) {
  double inv = 0.0, shift = 0.0;
  for (const auto& e : envs) {
    inv += 1.0 / (e.width * e.width);
    shift += e.modulation;
  }
  return TauKernel{std::sqrt(inv), shift};
}

double envelope_norm(const Envelope& e, double exponent, double b) {
  auto f = [&](double s) { return std::pow(1.0 + s * s, 0.5 * b) * e.hat(s); };
  const double half = 14.0 / e.width;
  const double lo = e.modulation - half, hi = e.modulation + half;
  if (std::isinf(exponent)) {
    double m = 0.0;
    const int n = 20001;
    for (int i = 0; i < n; ++i) m = std::max(m, f(lo + (hi - lo) * i / (n - 1)));
    return m;
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  auto g = [&](double s) { return std::pow(f(s), exponent); };
  double v = 0.0;
  if (lo < 0.0 && hi > 0.0)
    v = GK::integrate(g, lo, 0.0, 15, 1e-12) + GK::integrate(g, 0.0, hi, 15, 1e-12);
  else
    v = GK::integrate(g, lo, hi, 15, 1e-12);
  return std::pow(v / kTwoPi, 1.0 / exponent);
}

SpectrumRows::SpectrumRows(const Grid& g, double tau_lo, double tau_hi, TauKernel k)
    : grid_(g), kernel_(k) {
  if (!(k.width > 0.0)) throw std::invalid_argument("SpectrumRows: kernel width must be positive");
  bin_ = k.width / kBinsPerWidth;
  const double margin = (kReach + 1.0) * k.width;
  // bins live in theta; the lattice is in tau = theta + shift
  lo_ = std::floor((tau_lo - margin) / bin_) * bin_;
  nbins_ = static_cast<std::size_t>(std::ceil((tau_hi - tau_lo + 2.0 * margin) / bin_)) + 8;
  bins_.assign(nbins_ * g.size(), cd{});
  touched_.assign(g.size(), 0);
  const int reach = static_cast<int>(kReach * kBinsPerWidth);
  table_.resize(static_cast<std::size_t>(reach) + 1);
  TauKernel centered{k.width, 0.0};
  for (int j = 0; j <= reach; ++j) table_[static_cast<std::size_t>(j)] = centered(j * bin_);
}

void SpectrumRows::deposit(std::size_t row, double theta, cd mass) {
  const double pos = (theta - lo_) / bin_;
  const double fl = std::floor(pos);
  const double frac = pos - fl;
  const auto j = static_cast<std::ptrdiff_t>(fl);
  if (j < 0 || static_cast<std::size_t>(j) + 1 >= nbins_) throw std::out_of_range("SpectrumRows: theta outside range");
  cd* r = &bins_[row * nbins_];
  r[j] += (1.0 - frac) * mass;
  r[j + 1] += frac * mass;
  touched_[row] = 1;
}

std::vector<cd> SpectrumRows::lattice(std::size_t row) const {
  // lattice point t_j = lo_ + 4 j bin_ + shift, value sum_b B_b K(4j - b)
  const std::size_t n = nbins_ / 4;
  std::vector<cd> out(n);
  if (!touched_[row]) return out;
  const cd* r = &bins_[row * nbins_];
  const auto reach = static_cast<std::ptrdiff_t>(table_.size()) - 1;
  const auto nb = static_cast<std::ptrdiff_t>(nbins_);
  for (std::size_t j = 0; j < n; ++j) {
    const auto c = static_cast<std::ptrdiff_t>(4 * j);
    const auto b0 = std::max<std::ptrdiff_t>(0, c - reach), b1 = std::min<std::ptrdiff_t>(nb - 1, c + reach);
    cd acc{};
    for (auto b = b0; b <= b1; ++b) acc += r[b] * table_[static_cast<std::size_t>(std::abs(c - b))];
    out[j] = acc;
  }
  return out;
}

cd SpectrumRows::value(std::size_t row, double tau) const {
  if (!touched_[row]) return {};
  const double theta = tau - kernel_.shift;
  const cd* r = &bins_[row * nbins_];
  const double pos = (theta - lo_) / bin_;
  const auto reach = static_cast<std::ptrdiff_t>(table_.size()) - 1;
  const auto c = static_cast<std::ptrdiff_t>(std::floor(pos));
  cd acc{};
  TauKernel centered{kernel_.width, 0.0};
  for (auto b = std::max<std::ptrdiff_t>(0, c - reach); b <= std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(nbins_) - 1, c + reach); ++b)
    acc += r[b] * centered(theta - (lo_ + static_cast<double>(b) * bin_));
  return acc;
}

double SpectrumRows::row_norm(std::size_t row, double exponent, const std::function<double(double)>& sigma_weight) const {
  if (!touched_[row]) return 0.0;
  const auto lat = lattice(row);
  const double h = step();
  const double t0 = lo_ + kernel_.shift;
  const double xi3 = std::pow(grid_.xi(row), 3);
  std::vector<double> mag(lat.size());
  for (std::size_t j = 0; j < lat.size(); ++j) mag[j] = std::abs(lat[j]);
  if (std::isinf(exponent)) {
    double m = 0.0;
    for (std::size_t j = 0; j < lat.size(); ++j) {
      const double w = sigma_weight ? sigma_weight(t0 + h * j - xi3) : 1.0;
      m = std::max(m, w * mag[j]);
    }
    return m;
  }
  auto pw = [&](double v) { return v > 0.0 ? std::pow(v, exponent) : 0.0; };
  double acc = 0.0;
  const double fine_zone = 16.0 + 2.0 * h;
  for (std::size_t j = 0; j + 1 < lat.size(); ++j) {
    const double ta = t0 + h * j, tb = ta + h;
    if (mag[j] == 0.0 && mag[j + 1] == 0.0) continue;
    const bool near = sigma_weight && (ta - xi3 < fine_zone) && (tb - xi3 > -fine_zone);
    if (!near) {
      const double wa = sigma_weight ? sigma_weight(ta - xi3) : 1.0;
      const double wb = sigma_weight ? sigma_weight(tb - xi3) : 1.0;
      acc += 0.5 * h * (pw(wa * mag[j]) + pw(wb * mag[j + 1]));
      continue;
    }
    // cubic interpolation of the smooth spectrum, exact weight
    const std::size_t jm = j > 0 ? j - 1 : j, jp = j + 2 < lat.size() ? j + 2 : j + 1;
    const int sub = 64;
    for (int k = 0; k < sub; ++k) {
      const double s = (k + 0.5) / sub;
      const cd p0 = lat[jm], p1 = lat[j], p2 = lat[j + 1], p3 = lat[jp];
      const cd v = p1 + 0.5 * s * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)));
      acc += (h / sub) * pw(sigma_weight(ta + s * h - xi3) * std::abs(v));
    }
  }
  return std::pow(acc / kTwoPi, 1.0 / exponent);
}

void deposit_pairs(SpectrumRows& rows, const SpectralField& u0, const SpectralField& v0, const PairWeight& w) {
  const Grid& g = rows.grid();
  require_same_grid(g, u0.grid, "deposit_pairs");
  require_same_grid(g, v0.grid, "deposit_pairs");
  const auto u = to_frequency(u0).values, v = to_frequency(v0).values;
  const long n = static_cast<long>(g.size()), half = n / 2;
  const double cell = g.dxi() / kTwoPi;
  for (long k1 = -half; k1 < half; ++k1) {
    const cd a = u[static_cast<std::size_t>(k1 + half)];
    if (a == cd{}) continue;
    const double x1 = k1 * g.dxi();
    for (long k2 = -half; k2 < half; ++k2) {
      const long k = k1 + k2;
      if (k < -half || k >= half) continue;
      const cd b = v[static_cast<std::size_t>(k2 + half)];
      if (b == cd{}) continue;
      const double x2 = k2 * g.dxi();
      const double wt = w ? w(x1, x2) : 1.0;
      if (wt == 0.0) continue;
      rows.deposit(static_cast<std::size_t>(k + half), x1 * x1 * x1 + x2 * x2 * x2, wt * a * b * cell);
    }
  }
}

void deposit_triples(SpectrumRows& rows, const SpectralField& u0, const SpectralField& v0, const SpectralField& w0,
                     TrilinearMask mask, const RegionConstants& c) {
  const Grid& g = rows.grid();
  require_same_grid(g, u0.grid, "deposit_triples");
  require_same_grid(g, v0.grid, "deposit_triples");
  require_same_grid(g, w0.grid, "deposit_triples");
  const auto u = to_frequency(u0).values, v = to_frequency(v0).values, w = to_frequency(w0).values;
  const long n = static_cast<long>(g.size()), half = n / 2;
  const double cell = g.dxi() / kTwoPi;
  const double d = g.dxi();
  // index lists of the nonzero modes
  auto support = [&](const std::vector<cd>& f) {
    std::vector<long> s;
    for (long k = -half; k < half; ++k)
      if (f[static_cast<std::size_t>(k + half)] != cd{}) s.push_back(k);
    return s;
  };
  const auto su = support(u), sv = support(v), sw = support(w);
  for (long k1 : su) {
    const double x1 = k1 * d;
    const cd a = u[static_cast<std::size_t>(k1 + half)] * cell * cell;
    for (long k2 : sv) {
      const double x2 = k2 * d;
      const cd ab = a * v[static_cast<std::size_t>(k2 + half)];
      const double t12 = x1 * x1 * x1 + x2 * x2 * x2;
      for (long k3 : sw) {
        const long k = k1 + k2 + k3;
        if (k < -half || k >= half) continue;
        const double x3 = k3 * d;
        if (mask != TrilinearMask::unmasked && !mask_contains(mask, x1, x2, x3, c)) continue;
        rows.deposit(static_cast<std::size_t>(k + half), t12 + x3 * x3 * x3, ab * w[static_cast<std::size_t>(k3 + half)]);
      }
    }
  }
}

double spectrum_norm(const SpectrumRows& rows, double inner, double outer, const std::function<double(double)>& row_weight,
                     const std::function<double(double)>& sigma_weight) {
  const Grid& g = rows.grid();
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double rw = row_weight ? row_weight(g.xi(i)) : 1.0;
    r[i] = rw == 0.0 ? 0.0 : rw * rows.row_norm(i, inner, sigma_weight);
  }
  return lebesgue_sum(r, outer, g.dxi() / kTwoPi);
}


}  // namespace airylab

namespace airylab {

DensityRows::DensityRows(const Grid& g, double bin) : grid_(g), bin_(bin), offset_(g.size(), 0), rows_(g.size()) {
  if (!(bin > 0.0)) throw std::invalid_argument("DensityRows: bin must be positive");
}

cd* DensityRows::slot(std::size_t row, long j) {
  auto& r = rows_[row];
  long& off = offset_[row];
  if (r.empty()) {
    off = j;
    r.assign(1, cd{});
  } else if (j < off) {
    r.insert(r.begin(), static_cast<std::size_t>(off - j), cd{});
    off = j;
  } else if (j - off >= static_cast<long>(r.size())) {
    r.resize(static_cast<std::size_t>(j - off + 1), cd{});
  }
  return &r[static_cast<std::size_t>(j - off)];
}

void DensityRows::deposit_tent(std::size_t row, double a, double b, double c, cd mass) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  const long ja = static_cast<long>(std::floor(a / bin_)), jc = static_cast<long>(std::floor(c / bin_));
  slot(row, jc);
  cd* base = slot(row, ja);  // the row now spans [ja, jc]
  if (ja == jc) {
    *base += mass;
    return;
  }
  const double w = c - a;
  auto cdf = [&](double x) {
    if (x <= a) return 0.0;
    if (x >= c) return 1.0;
    if (x <= b) return (x - a) * (x - a) / (w * (b - a));
    return 1.0 - (c - x) * (c - x) / (w * (c - b));
  };
  double prev = 0.0;
  for (long j = ja; j <= jc; ++j) {
    const double next = j == jc ? 1.0 : cdf(bin_ * static_cast<double>(j + 1));
    base[j - ja] += (next - prev) * mass;
    prev = next;
  }
}

std::vector<cd> DensityRows::density(std::size_t row) const {
  std::vector<cd> out(rows_[row]);
  for (auto& v : out) v *= kTwoPi / bin_;
  return out;
}

double DensityRows::row_norm(std::size_t row, double exponent) const {
  const auto d = density(row);
  std::vector<double> mag(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) mag[j] = std::abs(d[j]);
  return lebesgue_sum(mag, exponent, bin_ / kTwoPi);
}

void resolve_triples(DensityRows& rows, const SpectralField& u0, const SpectralField& v0, const SpectralField& w0,
                     TrilinearMask mask, const RegionConstants& c) {
  const Grid& g = rows.grid();
  require_same_grid(g, u0.grid, "resolve_triples");
  require_same_grid(g, v0.grid, "resolve_triples");
  require_same_grid(g, w0.grid, "resolve_triples");
  const auto u = to_frequency(u0).values, v = to_frequency(v0).values, w = to_frequency(w0).values;
  const long n = static_cast<long>(g.size()), half = n / 2;
  const double d = g.dxi();
  auto peak = [](const std::vector<cd>& f) {
    double m = 0.0;
    for (const cd& x : f) m = std::max(m, std::abs(x));
    return m;
  };
  const double floor_mass = 1e-16 * peak(u) * peak(v) * peak(w);
  if (floor_mass == 0.0) return;
  const double tri = 0.5 * (d / kTwoPi) * (d / kTwoPi);
  auto at = [&](const std::vector<cd>& f, long k) { return k < -half || k >= half ? cd{} : f[static_cast<std::size_t>(k + half)]; };
  auto cube = [](double x) { return x * x * x; };
  std::vector<cd> m(static_cast<std::size_t>(n * n));
  std::vector<double> th(static_cast<std::size_t>(n * n));
  for (long K = -half; K < half; ++K) {
    const auto row = static_cast<std::size_t>(K + half);
    const double xi = K * d;
    for (long k1 = -half; k1 < half; ++k1)
      for (long k2 = -half; k2 < half; ++k2) {
        const auto idx = static_cast<std::size_t>((k1 + half) * n + k2 + half);
        m[idx] = at(u, k1) * at(v, k2) * at(w, K - k1 - k2);
        th[idx] = cube(k1 * d) + cube(k2 * d) + cube(xi - (k1 + k2) * d);
      }
    for (long i = 0; i + 1 < n; ++i)
      for (long j = 0; j + 1 < n; ++j) {
        const auto p00 = static_cast<std::size_t>(i * n + j), p10 = p00 + static_cast<std::size_t>(n), p01 = p00 + 1,
                   p11 = p10 + 1;
        if (std::max({std::abs(m[p00]), std::abs(m[p10]), std::abs(m[p01]), std::abs(m[p11])}) < floor_mass) continue;
        const double x1 = (i - half) * d, x2 = (j - half) * d;
        // lower triangle (00, 10, 01), upper triangle (10, 11, 01)
        for (int t = 0; t < 2; ++t) {
          const double c1 = x1 + d * (t == 0 ? 1.0 : 2.0) / 3.0, c2 = x2 + d * (t == 0 ? 1.0 : 2.0) / 3.0;
          if (mask != TrilinearMask::unmasked && !mask_contains(mask, c1, c2, xi - c1 - c2, c)) continue;
          const cd mass = t == 0 ? (m[p00] + m[p10] + m[p01]) / 3.0 : (m[p10] + m[p11] + m[p01]) / 3.0;
          if (t == 0)
            rows.deposit_tent(row, th[p00], th[p10], th[p01], mass * tri);
          else
            rows.deposit_tent(row, th[p10], th[p11], th[p01], mass * tri);
        }
      }
  }
}

double density_norm(const DensityRows& rows, double inner, double outer) {
  const Grid& g = rows.grid();
  std::vector<double> r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[i] = rows.row_norm(i, inner);
  return lebesgue_sum(r, outer, g.dxi() / kTwoPi);
}

}  // namespace airylab
