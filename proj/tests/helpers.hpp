#pragma once

#include <cmath>
#include <random>

#include "airylab/spectral_core.hpp"

namespace testutil {

using airylab::cd;

// Frequency-side Gaussian bump a exp(-(xi - c)^2 / (2 w^2)) with a phase ramp.
inline airylab::SpectralField freq_gauss(const airylab::Grid& g, double c, double w, cd a = 1.0, double shift = 0.0) {
  auto f = airylab::SpectralField::zeros(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double z = (g.xi(i) - c) / w;
    f.values[i] = a * std::exp(-0.5 * z * z) * std::polar(1.0, -shift * g.xi(i));
  }
  return f;
}

inline airylab::SpectralField random_field(const airylab::Grid& g, std::mt19937_64& rng, bool zero_nyquist = true) {
  std::normal_distribution<double> n(0.0, 1.0);
  auto f = airylab::SpectralField::zeros(g);
  for (auto& v : f.values) v = cd(n(rng), n(rng));
  if (zero_nyquist) f.values[0] = 0.0;
  return f;
}

inline double max_abs_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<cd>& a) {
  double m = 0.0;
  for (const cd& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace testutil
