#include "airylab/multilinear.hpp"

#include <algorithm>
#include <cmath>

#include "airylab/fft.hpp"

namespace airylab {

double BilinearWeight::operator()(double xi1, double xi2) const {
  if (order == 0.0) return 1.0;
  const double base = kind == BilinearKind::minus ? xi1 - xi2 : xi1 + 2.0 * xi2;
  if (base == 0.0) return 0.0;
  return std::pow(std::abs(base), order);
}

namespace {

// Zero-pad a centered spectrum to length m (centered), transform to samples.
std::vector<cd> padded_samples(const std::vector<cd>& hat, std::size_t m) {
  const std::size_t n = hat.size();
  std::vector<cd> buf(m);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    buf[static_cast<std::size_t>((k + static_cast<long>(m)) % static_cast<long>(m))] = hat[i];
  }
  dft_of_size(m).backward(buf);
  return buf;
}

std::vector<cd> padded_spectrum(std::vector<cd> samples, std::size_t n) {
  const std::size_t m = samples.size();
  dft_of_size(m).forward(samples);
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const long k = static_cast<long>(i) - static_cast<long>(n / 2);
    out[i] = samples[static_cast<std::size_t>((k + static_cast<long>(m)) % static_cast<long>(m))];
  }
  return out;
}

// Linear convolution sum_{k1+k2=k} a_k1 b_k2 via FFT with padding to 2n.
std::vector<cd> convolve_fft(const std::vector<cd>& a, const std::vector<cd>& b) {
  const std::size_t n = a.size();
  const std::size_t m = 2 * n;
  auto sa = padded_samples(a, m);
  const auto sb = padded_samples(b, m);
  for (std::size_t j = 0; j < m; ++j) sa[j] *= sb[j];
  auto out = padded_spectrum(std::move(sa), n);
  for (auto& v : out) v /= static_cast<double>(m);
  return out;
}

std::vector<cd> triple_convolve_fft(const std::vector<cd>& a, const std::vector<cd>& b, const std::vector<cd>& c) {
  const std::size_t n = a.size();
  const std::size_t m = 2 * n;
  auto sa = padded_samples(a, m);
  const auto sb = padded_samples(b, m);
  const auto sc = padded_samples(c, m);
  for (std::size_t j = 0; j < m; ++j) sa[j] *= sb[j] * sc[j];
  auto out = padded_spectrum(std::move(sa), n);
  for (auto& v : out) v /= static_cast<double>(m);
  return out;
}

std::vector<cd> bilinear_row(const Grid& g, const std::vector<cd>& f, const std::vector<cd>& h,
                             const BilinearWeight& w) {
  const std::size_t n = g.size();
  const double cell = g.dxi() / kTwoPi;
  if (w.order == 0.0) {
    auto out = convolve_fft(f, h);
    for (auto& v : out) v *= cell;
    return out;
  }
  std::vector<cd> out(n);
  const long half = static_cast<long>(n / 2);
  for (std::size_t k = 0; k < n; ++k) {
    const long kk = g.mode(k);
    cd acc{};
    // k1 + k2 = kk with both on the grid
    const long lo = std::max(-half, kk - half + 1);
    const long hi = std::min(half - 1, kk + half);
    for (long k1 = lo; k1 <= hi; ++k1) {
      const long k2 = kk - k1;
      const double wt = w(k1 * g.dxi(), k2 * g.dxi());
      if (wt == 0.0) continue;
      acc += wt * f[static_cast<std::size_t>(k1 + half)] * h[static_cast<std::size_t>(k2 + half)];
    }
    out[k] = acc * cell;
  }
  return out;
}

std::vector<cd> trilinear_row(const Grid& g, const std::vector<cd>& f, const std::vector<cd>& h1,
                              const std::vector<cd>& h2, TrilinearMask mask, const RegionConstants& c) {
  const std::size_t n = g.size();
  const double cell = g.dxi() / kTwoPi;
  if (mask == TrilinearMask::unmasked) {
    auto out = triple_convolve_fft(f, h1, h2);
    for (auto& v : out) v *= cell * cell;
    return out;
  }
  std::vector<cd> out(n);
  const long half = static_cast<long>(n / 2);
  const double d = g.dxi();
  for (long k1 = -half; k1 < half; ++k1) {
    const cd a = f[static_cast<std::size_t>(k1 + half)];
    if (a == cd{}) continue;
    for (long k2 = -half; k2 < half; ++k2) {
      const cd ab = a * h1[static_cast<std::size_t>(k2 + half)];
      if (ab == cd{}) continue;
      for (long k3 = -half; k3 < half; ++k3) {
        const long k = k1 + k2 + k3;
        if (k < -half || k >= half) continue;
        if (!mask_contains(mask, k1 * d, k2 * d, k3 * d, c)) continue;
        out[static_cast<std::size_t>(k + half)] += ab * h2[static_cast<std::size_t>(k3 + half)];
      }
    }
  }
  for (auto& v : out) v *= cell * cell;
  return out;
}

// Run a per-time-sample row operation on mixed-side columns.
template <class RowOp>
SpaceTimeField per_time_sample(const std::vector<const SpaceTimeField*>& in, RowOp op) {
  const SpaceTimeGrid& g = in.front()->grid;
  std::vector<SpaceTimeField> mixed;
  for (const auto* f : in) {
    require_same_grid(f->grid, g, "multilinear");
    mixed.push_back(to_mixed(*f));
  }
  const Side target = in.front()->side == Side::frequency ? Side::frequency : Side::mixed;
  SpaceTimeField out = SpaceTimeField::zeros(g, Side::mixed);
  const std::size_t nx = g.space().size();
  std::vector<std::vector<cd>> cols(mixed.size(), std::vector<cd>(nx));
  for (std::size_t m = 0; m < g.n_t(); ++m) {
    for (std::size_t a = 0; a < mixed.size(); ++a)
      for (std::size_t i = 0; i < nx; ++i) cols[a][i] = mixed[a](i, m);
    const auto r = op(cols);
    for (std::size_t i = 0; i < nx; ++i) out(i, m) = r[i];
  }
  return target == Side::frequency ? to_frequency(out, TimeWindow::none()) : out;
}

}  // namespace

SpectralField bilinear_apply(const SpectralField& f, const SpectralField& g, const BilinearWeight& w) {
  require_same_grid(f.grid, g.grid, "bilinear_apply");
  const SpectralField fh = to_frequency(f);
  const SpectralField gh = to_frequency(g);
  return SpectralField{f.grid, bilinear_row(f.grid, fh.values, gh.values, w), Side::frequency};
}

SpaceTimeField bilinear_apply(const SpaceTimeField& f, const SpaceTimeField& g, const BilinearWeight& w) {
  const Grid& sg = f.grid.space();
  return per_time_sample({&f, &g}, [&](const std::vector<std::vector<cd>>& c) {
    return bilinear_row(sg, c[0], c[1], w);
  });
}

SpectralField conjugate(const SpectralField& u) {
  const SpectralField uh = to_frequency(u);
  const std::size_t n = uh.values.size();
  SpectralField out = uh;
  for (std::size_t i = 0; i < n; ++i) out.values[i] = std::conj(uh.values[(n - i) % n]);
  return out;
}

SpaceTimeField conjugate_flip(const SpaceTimeField& u) {
  const SpaceTimeField f = to_frequency(u);
  SpaceTimeField out = f;
  const std::size_t nx = f.grid.space().size();
  const std::size_t nt = f.grid.n_t();
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t m = 0; m < nt; ++m) out(i, m) = std::conj(f((nx - i) % nx, (nt - m) % nt));
  return out;
}

cd inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f.grid, g.grid, "inner_product");
  const SpectralField fh = to_frequency(f);
  const SpectralField gh = to_frequency(g);
  cd acc{};
  for (std::size_t i = 0; i < fh.values.size(); ++i) acc += fh.values[i] * std::conj(gh.values[i]);
  return acc * (f.grid.dxi() / kTwoPi);
}

double adjoint_defect(const SpectralField& u, const SpectralField& v, const SpectralField& w, double s) {
  const SpectralField mv = i_minus(u, v, s);
  const SpectralField nw = i_plus(w, conjugate(u), s);
  const cd lhs = inner_product(mv, w);
  const cd rhs = inner_product(v, nw);
  const double scale = std::sqrt(std::abs(inner_product(mv, mv)) * std::abs(inner_product(w, w)));
  if (scale == 0.0) return 0.0;
  return std::abs(lhs - rhs) / scale;
}

SpectralField trilinear_apply(const SpectralField& f, const SpectralField& g, const SpectralField& h,
                              TrilinearMask mask, const RegionConstants& c) {
  require_same_grid(f.grid, g.grid, "trilinear_apply");
  require_same_grid(f.grid, h.grid, "trilinear_apply");
  return SpectralField{f.grid,
                       trilinear_row(f.grid, to_frequency(f).values, to_frequency(g).values,
                                     to_frequency(h).values, mask, c),
                       Side::frequency};
}

SpaceTimeField trilinear_apply(const SpaceTimeField& f, const SpaceTimeField& g, const SpaceTimeField& h,
                               TrilinearMask mask, const RegionConstants& c) {
  const Grid& sg = f.grid.space();
  return per_time_sample({&f, &g, &h}, [&](const std::vector<std::vector<cd>>& cols) {
    return trilinear_row(sg, cols[0], cols[1], cols[2], mask, c);
  });
}

SpectralField product(const SpectralField& f, const SpectralField& g) { return i_minus(f, g, 0.0); }

SpectralField cube(const SpectralField& u) { return trilinear_apply(u, u, u, TrilinearMask::unmasked); }

}  // namespace airylab
