#pragma once

// Grids, transform conventions, Fourier multipliers and the Airy group.
//
// Conventions (used by every other module):
//   * space: periodic box [-L/2, L/2) with n_x points, x_j = -L/2 + j dx.
//   * frequency: xi_k = k dxi, k = -n_x/2 .. n_x/2 - 1, dxi = 2 pi / L.
//     Arrays are stored in centered order, index i <-> k = i - n_x/2.
//   * forward transform  u^(xi) = dx sum_j exp(-i x_j xi) u(x_j)
//     inverse transform  u(x)   = (dxi / 2pi) sum_k exp(+i x xi_k) u^(xi_k)
//   * frequency-side integrals use the measure dxi/(2 pi) (and dtau/(2 pi)),
//     so Plancherel holds without constants and F(fg) = f^ * g^ with that
//     measure.
//   * time: samples t_m = -T/2 + m dt on a window of length T, tau_m =
//     (m - n_t/2) dtau with dtau = 2 pi / T; same sign and normalization as
//     in space.

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace airylab {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Grid {
 public:
  Grid(std::size_t n_x, double length);

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double dx() const { return length_ / static_cast<double>(n_); }
  double dxi() const { return kTwoPi / length_; }
  int mode(std::size_t i) const { return static_cast<int>(i) - static_cast<int>(n_ / 2); }
  double xi(std::size_t i) const { return mode(i) * dxi(); }
  double x(std::size_t j) const { return -0.5 * length_ + static_cast<double>(j) * dx(); }
  // Largest |xi| on the grid (the -n/2 mode).
  double xi_max() const { return 0.5 * static_cast<double>(n_) * dxi(); }
  // Centered index of integer mode k, or -1 if k is not on the grid.
  long index_of_mode(long k) const;

  std::string fingerprint() const;
  bool operator==(const Grid&) const = default;

 private:
  std::size_t n_;
  double length_;
};

class SpaceTimeGrid {
 public:
  // Rejects grids whose tau-range cannot represent the cubic phase:
  // max|xi|^3 must not exceed kTauHeadroom * max|tau|.
  SpaceTimeGrid(Grid space, std::size_t n_t, double t_window);

  static constexpr double kTauHeadroom = 0.8;

  const Grid& space() const { return space_; }
  std::size_t n_t() const { return n_t_; }
  double t_window() const { return t_window_; }
  double dt() const { return t_window_ / static_cast<double>(n_t_); }
  double dtau() const { return kTwoPi / t_window_; }
  double t(std::size_t m) const { return -0.5 * t_window_ + static_cast<double>(m) * dt(); }
  double tau(std::size_t m) const {
    return (static_cast<double>(m) - 0.5 * static_cast<double>(n_t_)) * dtau();
  }
  double tau_max() const { return 0.5 * static_cast<double>(n_t_) * dtau(); }

  // Smallest power-of-two n_t satisfying the tau-range constraint for window T.
  static std::size_t min_time_samples(const Grid& space, double t_window);

  std::string fingerprint() const;
  bool operator==(const SpaceTimeGrid&) const = default;

 private:
  Grid space_;
  std::size_t n_t_;
  double t_window_;
};

enum class Side { physical, mixed, frequency };

// 1D data: u(x_j) on the physical side, u^(xi_k) on the frequency side.
struct SpectralField {
  Grid grid;
  std::vector<cd> values;
  Side side = Side::frequency;

  static SpectralField zeros(const Grid& g, Side side = Side::frequency);

  // Linear interpolation of frequency-side values; zero outside the grid.
  cd at(double xi) const;
};

// 2D data stored row-major: values[i * n_t + m].
//   physical:  (x_i, t_m)
//   mixed:     (xi_i, t_m)
//   frequency: (xi_i, tau_m)
struct SpaceTimeField {
  SpaceTimeGrid grid;
  std::vector<cd> values;
  Side side = Side::frequency;

  static SpaceTimeField zeros(const SpaceTimeGrid& g, Side side = Side::frequency);
  cd& operator()(std::size_t i, std::size_t m) { return values[i * grid.n_t() + m]; }
  const cd& operator()(std::size_t i, std::size_t m) const { return values[i * grid.n_t() + m]; }
};

// Flat-top C-infinity window on [-T/2, T/2]: equal to 1 on the central part
// and tapering to 0 over `taper_fraction * T` at each end with the smooth step
//   S(s) = e^{-1/s} / (e^{-1/s} + e^{-1/(1-s)}),  w = 1 - S.
// taper_fraction = 0 gives the rectangular (unwindowed) transform.
struct TimeWindow {
  double taper_fraction = 0.04;

  double operator()(double t, double t_window) const;
  static TimeWindow none() { return TimeWindow{0.0}; }
};

SpectralField to_frequency(const SpectralField& f);
SpectralField to_physical(const SpectralField& f);

// (x,t) <-> (xi,t) <-> (xi,tau). The time transform is windowed only when
// going from mixed to frequency with a non-trivial window; the inverse never
// un-windows, so the pair with TimeWindow::none() is an exact round trip.
SpaceTimeField to_mixed(const SpaceTimeField& f);
SpaceTimeField to_frequency(const SpaceTimeField& f, const TimeWindow& window = TimeWindow::none());
SpaceTimeField to_physical(const SpaceTimeField& f);

// Windowed space-time transform of physical samples (default window).
SpaceTimeField spacetime_transform(const SpaceTimeField& f, const TimeWindow& window = TimeWindow{});

enum class MultiplierKind { riesz, bessel, lambda, lowpass };

struct MultiplierSpec {
  MultiplierKind kind = MultiplierKind::bessel;
  double order = 0.0;
};

// Symbol of the multiplier at (xi, tau); tau is only read by lambda.
// riesz: |xi|^order with the zero mode mapped to 0 for order != 0.
double multiplier_symbol(const MultiplierSpec& m, double xi, double tau = 0.0);

class MultiplierRangeError : public std::range_error {
 public:
  MultiplierRangeError(const std::string& what, std::size_t mode_index)
      : std::range_error(what), mode_index(mode_index) {}
  std::size_t mode_index;
};

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);
SpaceTimeField apply_multiplier(const SpaceTimeField& f, const MultiplierSpec& m);

// e^{-t d_x^3}: multiplies the frequency side by exp(i t xi^3).
SpectralField airy_propagate(const SpectralField& u0, double t);

// Samples of the Airy flow of u0 on the space-time grid, on the mixed side.
SpaceTimeField airy_flow(const SpectralField& u0, const SpaceTimeGrid& g);

void require_same_grid(const Grid& a, const Grid& b, const char* where);
void require_same_grid(const SpaceTimeGrid& a, const SpaceTimeGrid& b, const char* where);

}  // namespace airylab
