#include "airylab/spectral_core.hpp"

#include "airylab/fft.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace airylab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Centered-order forward transform of one contiguous or strided sequence.
// origin_phase: exp(-i x_0 xi_k) with x_0 = -period/2 reduces to (-1)^k.
void forward_centered(std::vector<cd>& work, double cell) {
  const std::size_t n = work.size();
  const auto& dft = dft_of_size(n);
  dft.forward(work);
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    const std::size_t src = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out[i] = sign * cell * work[src];
  }
  work.swap(out);
}

void inverse_centered(std::vector<cd>& work, double period) {
  const std::size_t n = work.size();
  std::vector<cd> tmp(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    const std::size_t dst = static_cast<std::size_t>((k % static_cast<long>(n) + static_cast<long>(n)) %
                                                     static_cast<long>(n));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    tmp[dst] = sign * work[i];
  }
  dft_of_size(n).backward(tmp);
  // (dxi / 2 pi) = 1 / period
  for (auto& v : tmp) v /= period;
  work.swap(tmp);
}

}  // namespace

Grid::Grid(std::size_t n_x, double length) : n_(n_x), length_(length) {
  if (!is_power_of_two(n_x) || n_x < 2) throw std::invalid_argument("Grid: n_x must be a power of two >= 2");
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("Grid: length must be positive");
}

long Grid::index_of_mode(long k) const {
  const long half = static_cast<long>(n_ / 2);
  if (k < -half || k >= half) return -1;
  return k + half;
}

std::string Grid::fingerprint() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n%zu_L%.6g", n_, length_);
  return buf;
}

SpaceTimeGrid::SpaceTimeGrid(Grid space, std::size_t n_t, double t_window)
    : space_(space), n_t_(n_t), t_window_(t_window) {
  if (!is_power_of_two(n_t) || n_t < 2) throw std::invalid_argument("SpaceTimeGrid: n_t must be a power of two >= 2");
  if (!(t_window > 0.0) || !std::isfinite(t_window))
    throw std::invalid_argument("SpaceTimeGrid: window length must be positive");
  const double xi3 = std::pow(space_.xi_max(), 3);
  if (xi3 > kTauHeadroom * tau_max()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "SpaceTimeGrid: max|xi|^3 = %.6g exceeds %.2f * max|tau| = %.6g", xi3,
                  kTauHeadroom, kTauHeadroom * tau_max());
    throw std::invalid_argument(buf);
  }
}

std::size_t SpaceTimeGrid::min_time_samples(const Grid& space, double t_window) {
  const double need = std::pow(space.xi_max(), 3) / kTauHeadroom;  // required tau_max
  std::size_t n = 2;
  while (0.5 * static_cast<double>(n) * kTwoPi / t_window < need) n *= 2;
  return n;
}

std::string SpaceTimeGrid::fingerprint() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s_nt%zu_T%.6g", space_.fingerprint().c_str(), n_t_, t_window_);
  return buf;
}

SpectralField SpectralField::zeros(const Grid& g, Side side) {
  return SpectralField{g, std::vector<cd>(g.size()), side};
}

cd SpectralField::at(double xi) const {
  if (side != Side::frequency) throw std::logic_error("SpectralField::at: field not on frequency side");
  const double pos = xi / grid.dxi() + 0.5 * static_cast<double>(grid.size());
  const double fl = std::floor(pos);
  const long i0 = static_cast<long>(fl);
  const double w = pos - fl;
  const long n = static_cast<long>(grid.size());
  auto get = [&](long i) { return (i >= 0 && i < n) ? values[static_cast<std::size_t>(i)] : cd{}; };
  if (w == 0.0) return get(i0);
  return (1.0 - w) * get(i0) + w * get(i0 + 1);
}

SpaceTimeField SpaceTimeField::zeros(const SpaceTimeGrid& g, Side side) {
  return SpaceTimeField{g, std::vector<cd>(g.space().size() * g.n_t()), side};
}

double TimeWindow::operator()(double t, double t_window) const {
  const double half = 0.5 * t_window;
  const double a = std::abs(t);
  if (a >= half) return (taper_fraction <= 0.0 && t >= -half && t < half) ? 1.0 : 0.0;
  const double flat = half - taper_fraction * t_window;
  if (a <= flat) return 1.0;
  const double s = (a - flat) / (half - flat);
  const double e0 = std::exp(-1.0 / s);
  const double e1 = std::exp(-1.0 / (1.0 - s));
  return 1.0 - e0 / (e0 + e1);
}

SpectralField to_frequency(const SpectralField& f) {
  if (f.side == Side::frequency) return f;
  SpectralField out = f;
  forward_centered(out.values, f.grid.dx());
  out.side = Side::frequency;
  return out;
}

SpectralField to_physical(const SpectralField& f) {
  if (f.side == Side::physical) return f;
  SpectralField out = f;
  inverse_centered(out.values, f.grid.length());
  out.side = Side::physical;
  return out;
}

namespace {

// Apply a per-column (fixed time) transform in space.
template <class Op>
void for_each_time_column(SpaceTimeField& f, Op op) {
  const std::size_t nx = f.grid.space().size();
  const std::size_t nt = f.grid.n_t();
  std::vector<cd> col(nx);
  for (std::size_t m = 0; m < nt; ++m) {
    for (std::size_t i = 0; i < nx; ++i) col[i] = f(i, m);
    op(col);
    for (std::size_t i = 0; i < nx; ++i) f(i, m) = col[i];
  }
}

template <class Op>
void for_each_space_row(SpaceTimeField& f, Op op) {
  const std::size_t nx = f.grid.space().size();
  const std::size_t nt = f.grid.n_t();
  std::vector<cd> row(nt);
  for (std::size_t i = 0; i < nx; ++i) {
    std::copy_n(f.values.begin() + static_cast<long>(i * nt), nt, row.begin());
    op(row);
    std::copy_n(row.begin(), nt, f.values.begin() + static_cast<long>(i * nt));
  }
}

}  // namespace

SpaceTimeField to_mixed(const SpaceTimeField& f) {
  SpaceTimeField out = f;
  if (f.side == Side::mixed) return out;
  if (f.side == Side::physical) {
    const double dx = f.grid.space().dx();
    for_each_time_column(out, [dx](std::vector<cd>& c) { forward_centered(c, dx); });
  } else {
    const double period = f.grid.t_window();
    for_each_space_row(out, [period](std::vector<cd>& r) { inverse_centered(r, period); });
  }
  out.side = Side::mixed;
  return out;
}

SpaceTimeField to_frequency(const SpaceTimeField& f, const TimeWindow& window) {
  if (f.side == Side::frequency) return f;
  SpaceTimeField out = to_mixed(f);
  const auto& g = f.grid;
  std::vector<double> w(g.n_t());
  for (std::size_t m = 0; m < g.n_t(); ++m) w[m] = window(g.t(m), g.t_window());
  const double dt = g.dt();
  for_each_space_row(out, [&](std::vector<cd>& r) {
    for (std::size_t m = 0; m < r.size(); ++m) r[m] *= w[m];
    forward_centered(r, dt);
  });
  out.side = Side::frequency;
  return out;
}

SpaceTimeField to_physical(const SpaceTimeField& f) {
  SpaceTimeField out = to_mixed(f);
  const double period = f.grid.space().length();
  for_each_time_column(out, [period](std::vector<cd>& c) { inverse_centered(c, period); });
  out.side = Side::physical;
  return out;
}

SpaceTimeField spacetime_transform(const SpaceTimeField& f, const TimeWindow& window) {
  if (f.side != Side::physical) throw std::invalid_argument("spacetime_transform: expects physical samples");
  return to_frequency(f, window);
}

double multiplier_symbol(const MultiplierSpec& m, double xi, double tau) {
  switch (m.kind) {
    case MultiplierKind::riesz:
      if (m.order == 0.0) return 1.0;
      if (xi == 0.0) return 0.0;
      return std::pow(std::abs(xi), m.order);
    case MultiplierKind::bessel:
      return std::pow(1.0 + xi * xi, 0.5 * m.order);
    case MultiplierKind::lambda: {
      const double sigma = tau - xi * xi * xi;
      return std::pow(1.0 + sigma * sigma, 0.5 * m.order);
    }
    case MultiplierKind::lowpass:
      return std::abs(xi) <= 1.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

namespace {
void check_order(const MultiplierSpec& m) {
  if (!std::isfinite(m.order)) throw std::invalid_argument("apply_multiplier: order must be finite");
}
[[noreturn]] void range_failure(std::size_t i) {
  throw MultiplierRangeError("apply_multiplier: non-finite symbol at mode index " + std::to_string(i), i);
}
}  // namespace

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
  check_order(m);
  if (m.kind == MultiplierKind::lambda)
    throw std::invalid_argument("apply_multiplier: lambda needs a space-time field");
  SpectralField out = to_frequency(f);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double sym = multiplier_symbol(m, out.grid.xi(i));
    const cd v = sym * out.values[i];
    if (!std::isfinite(sym) || !std::isfinite(v.real()) || !std::isfinite(v.imag())) range_failure(i);
    out.values[i] = v;
  }
  return out;
}

SpaceTimeField apply_multiplier(const SpaceTimeField& f, const MultiplierSpec& m) {
  check_order(m);
  SpaceTimeField out = to_frequency(f);
  const auto& g = out.grid;
  for (std::size_t i = 0; i < g.space().size(); ++i) {
    for (std::size_t k = 0; k < g.n_t(); ++k) {
      const double sym = multiplier_symbol(m, g.space().xi(i), g.tau(k));
      const cd v = sym * out(i, k);
      if (!std::isfinite(sym) || !std::isfinite(v.real()) || !std::isfinite(v.imag()))
        range_failure(i * g.n_t() + k);
      out(i, k) = v;
    }
  }
  return out;
}

SpectralField airy_propagate(const SpectralField& u0, double t) {
  SpectralField out = to_frequency(u0);
  if (t == 0.0) return out;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const double xi = out.grid.xi(i);
    const double phase = t * xi * xi * xi;
    if (!std::isfinite(phase)) throw std::range_error("airy_propagate: phase overflow");
    out.values[i] *= std::polar(1.0, phase);
  }
  return out;
}

SpaceTimeField airy_flow(const SpectralField& u0, const SpaceTimeGrid& g) {
  require_same_grid(u0.grid, g.space(), "airy_flow");
  const SpectralField hat = to_frequency(u0);
  SpaceTimeField out = SpaceTimeField::zeros(g, Side::mixed);
  for (std::size_t i = 0; i < g.space().size(); ++i) {
    const double xi = g.space().xi(i);
    const double xi3 = xi * xi * xi;
    for (std::size_t m = 0; m < g.n_t(); ++m) out(i, m) = std::polar(1.0, g.t(m) * xi3) * hat.values[i];
  }
  return out;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) throw GridMismatch(std::string(where) + ": grid mismatch");
}

void require_same_grid(const SpaceTimeGrid& a, const SpaceTimeGrid& b, const char* where) {
  if (!(a == b)) throw GridMismatch(std::string(where) + ": grid mismatch");
}

}  // namespace airylab
