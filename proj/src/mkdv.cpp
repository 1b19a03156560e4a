#include "airylab/mkdv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "airylab/fft.hpp"
#include "airylab/resonance.hpp"

namespace airylab {

namespace {

constexpr int kNodes = 8;

// Gauss-Legendre panel on [-1, 1]: nodes, weights, and the integration
// matrix S[j][k] = int_{-1}^{x_j} l_k.
struct Panel {
  std::array<double, kNodes> x{}, w{};
  std::array<std::array<double, kNodes>, kNodes> S{};

  Panel() {
    using GL = boost::math::quadrature::gauss<double, kNodes>;
    const auto& a = GL::abscissa();
    const auto& wt = GL::weights();
    for (int i = 0; i < kNodes / 2; ++i) {
      x[kNodes / 2 - 1 - i] = -a[i];
      w[kNodes / 2 - 1 - i] = wt[i];
      x[kNodes / 2 + i] = a[i];
      w[kNodes / 2 + i] = wt[i];
    }
    for (int j = 0; j < kNodes; ++j) {
      const double half = 0.5 * (x[j] + 1.0);
      for (int k = 0; k < kNodes; ++k) {
        double acc = 0.0;
        for (int q = 0; q < kNodes; ++q) acc += w[q] * basis(k, -1.0 + half * (x[q] + 1.0));
        S[j][k] = half * acc;
      }
    }
  }

  double basis(int k, double y) const {
    double v = 1.0;
    for (int m = 0; m < kNodes; ++m)
      if (m != k) v *= (y - x[m]) / (x[k] - x[m]);
    return v;
  }

  double basis_derivative(int k, double y) const {
    double acc = 0.0;
    for (int m = 0; m < kNodes; ++m) {
      if (m == k) continue;
      double p = 1.0 / (x[k] - x[m]);
      for (int l = 0; l < kNodes; ++l)
        if (l != k && l != m) p *= (y - x[l]) / (x[k] - x[l]);
      acc += p;
    }
    return acc;
  }
};

const Panel& panel() {
  static const Panel p;
  return p;
}

double l2(const Grid& g, const std::vector<cd>& v) {
  double acc = 0.0;
  for (const cd& z : v) acc += std::norm(z);
  return std::sqrt(acc * g.dxi() / kTwoPi);
}

TimeSeries difference(const TimeSeries& a, const TimeSeries& b) {
  TimeSeries d = a;
  for (std::size_t j = 0; j < d.values.size(); ++j)
    for (std::size_t i = 0; i < d.values[j].size(); ++i) d.values[j][i] -= b.values[j][i];
  return d;
}

bool finite(const TimeSeries& u) {
  for (const auto& row : u.values)
    for (const cd& z : row)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

void validate(const SolverConfig& cfg) {
  const auto& p = cfg.params;
  if (!(p.r > 1.0 && p.r <= 2.0)) throw std::invalid_argument("solver: r must lie in (1, 2]");
  if (p.s < sr_threshold(p.r) - 1e-12) throw std::invalid_argument("solver: s below the threshold s(r)");
  if (!(p.b > 1.0 / p.r)) throw std::invalid_argument("solver: b must exceed 1/r");
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("solver: delta must be positive");
  if (cfg.sign != 1 && cfg.sign != -1) throw std::invalid_argument("solver: sign must be +1 or -1");
  if (!(cfg.tol > 0.0) || cfg.max_iter < 1) throw std::invalid_argument("solver: tol and max_iter must be positive");
  if (!(cfg.x_window >= 2.0)) throw std::invalid_argument("solver: x_window must be at least 2 (delta <= T/2)");
  if (cfg.panels < 0 || cfg.max_panels < 1) throw std::invalid_argument("solver: bad panel counts");
}

TimeSeries TimeSeries::constant(const SpectralField& u0, double delta, int panels) {
  const SpectralField f = to_frequency(u0);
  TimeSeries s;
  s.grid = f.grid;
  s.delta = delta;
  s.panels = panels;
  s.values.assign(static_cast<std::size_t>(panels * kNodes), f.values);
  return s;
}

double TimeSeries::node_time(std::size_t j) const {
  const double h = delta / panels;
  const auto p = static_cast<double>(j / kNodes);
  return (p + 0.5 * (panel().x[j % kNodes] + 1.0)) * h;
}

std::vector<cd> TimeSeries::interaction_at(double t) const {
  t = std::clamp(t, 0.0, delta);
  const double h = delta / panels;
  const int p = std::min(static_cast<int>(t / h), panels - 1);
  const double y = 2.0 * (t - p * h) / h - 1.0;
  std::vector<cd> out(grid.size());
  for (int k = 0; k < kNodes; ++k) {
    const double l = panel().basis(k, y);
    const auto& row = values[static_cast<std::size_t>(p * kNodes + k)];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += l * row[i];
  }
  return out;
}

std::vector<cd> TimeSeries::interaction_derivative_at(double t) const {
  t = std::clamp(t, 0.0, delta);
  const double h = delta / panels;
  const int p = std::min(static_cast<int>(t / h), panels - 1);
  const double y = 2.0 * (t - p * h) / h - 1.0;
  std::vector<cd> out(grid.size());
  for (int k = 0; k < kNodes; ++k) {
    const double l = 2.0 / h * panel().basis_derivative(k, y);
    const auto& row = values[static_cast<std::size_t>(p * kNodes + k)];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += l * row[i];
  }
  return out;
}

SpectralField TimeSeries::at(double t) const {
  SpectralField f{grid, interaction_at(t), Side::frequency};
  const double tc = std::clamp(t, 0.0, delta);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const double xi = grid.xi(i);
    f.values[i] *= std::polar(1.0, tc * xi * xi * xi);
  }
  return f;
}

std::vector<cd> interaction_nonlinearity(const Grid& g, const std::vector<cd>& v, double t, int sign) {
  const std::size_t n = g.size();
  const Grid pad(2 * n, g.length());
  SpectralField u = SpectralField::zeros(pad);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.xi(i);
    u.values[i + n / 2] = v[i] * std::polar(1.0, t * xi * xi * xi);
  }
  SpectralField phys = to_physical(u);
  for (cd& z : phys.values) z = z * z * z;
  const SpectralField cube = to_frequency(phys);
  std::vector<cd> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = g.xi(i);
    out[i] = -static_cast<double>(sign) * std::polar(1.0, -t * xi * xi * xi) * cd(0.0, xi) * cube.values[i + n / 2];
  }
  return out;
}

TimeSeries duhamel_step(const TimeSeries& u, const SpectralField& u0, const SolverConfig& cfg, bool linear) {
  const SpectralField f = to_frequency(u0);
  require_same_grid(u.grid, f.grid, "duhamel_step");
  TimeSeries out = u;
  const std::size_t n = u.grid.size();
  const double h = u.delta / u.panels;
  const Panel& P = panel();
  std::vector<cd> carry(n);
  std::vector<std::vector<cd>> nl(kNodes);
  for (int p = 0; p < u.panels; ++p) {
    for (int k = 0; k < kNodes; ++k) {
      const auto j = static_cast<std::size_t>(p * kNodes + k);
      nl[static_cast<std::size_t>(k)] =
          linear ? std::vector<cd>(n) : interaction_nonlinearity(u.grid, u.values[j], u.node_time(j), cfg.sign);
    }
    for (int q = 0; q < kNodes; ++q) {
      auto& row = out.values[static_cast<std::size_t>(p * kNodes + q)];
      for (std::size_t i = 0; i < n; ++i) {
        cd acc = 0.0;
        for (int k = 0; k < kNodes; ++k) acc += P.S[q][k] * nl[static_cast<std::size_t>(k)][i];
        row[i] = f.values[i] + carry[i] + 0.5 * h * acc;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      cd acc = 0.0;
      for (int k = 0; k < kNodes; ++k) acc += P.w[k] * nl[static_cast<std::size_t>(k)][i];
      carry[i] += 0.5 * h * acc;
    }
  }
  return out;
}

double series_xsb_norm(const TimeSeries& u, const SolverConfig& cfg) {
  const Grid& g = u.grid;
  const std::size_t nt = cfg.x_samples, nx = g.size();
  const double T = cfg.x_window * u.delta;
  const double t_lo = -u.delta, center = t_lo + 0.5 * T;
  const double dt = T / static_cast<double>(nt);
  const TimeWindow window{};
  std::vector<cd> grid2(nx * nt);  // [mode][sample]
  for (std::size_t m = 0; m < nt; ++m) {
    const double t = t_lo + dt * static_cast<double>(m);
    const double w = window(t - center, T) * (m % 2 == 0 ? 1.0 : -1.0);
    if (w == 0.0) continue;
    const auto v = u.interaction_at(t);
    for (std::size_t i = 0; i < nx; ++i) grid2[i * nt + m] = w * v[i];
  }
  const Dft& dft = dft_of_size(nt);
  const double dsigma = kTwoPi / T;
  std::vector<double> mag(nx * nt);
  for (std::size_t i = 0; i < nx; ++i) {
    std::span<cd> row(&grid2[i * nt], nt);
    dft.forward(row);
    const double xi = g.xi(i);
    const double wx = std::pow(1.0 + xi * xi, 0.5 * cfg.params.s);
    for (std::size_t k = 0; k < nt; ++k) {
      const double sigma = (static_cast<double>(k) - 0.5 * static_cast<double>(nt)) * dsigma;
      mag[i * nt + k] = wx * std::pow(1.0 + sigma * sigma, 0.5 * cfg.params.b) * dt * std::abs(row[k]);
    }
  }
  return lebesgue_sum(mag, cfg.params.r_conj(), g.dxi() * dsigma / (kTwoPi * kTwoPi));
}

const char* verdict_name(SolverVerdict v) {
  switch (v) {
    case SolverVerdict::converged: return "converged";
    case SolverVerdict::diverged: return "diverged";
    case SolverVerdict::max_iter: return "max_iter";
  }
  return "?";
}

bool SolverState::contracting(int burn_in) const {
  if (!converged()) return false;
  for (std::size_t k = static_cast<std::size_t>(std::max(burn_in, 0)); k < contraction_factors.size(); ++k)
    if (!(contraction_factors[k] < 1.0)) return false;
  return true;
}

namespace {

double pde_residual(const TimeSeries& u, int sign) {
  double worst = 0.0;
  const double h = u.delta / u.panels;
  for (int p = 0; p < u.panels; ++p)
    for (double y : {-0.75, -0.25, 0.25, 0.75}) {
      const double t = (p + 0.5 * (y + 1.0)) * h;
      auto d = u.interaction_derivative_at(t);
      const auto nl = interaction_nonlinearity(u.grid, u.interaction_at(t), t, sign);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= nl[i];
      worst = std::max(worst, l2(u.grid, d));
    }
  return worst;
}

}  // namespace

SolverState picard_fixed(const SpectralField& u0, const SolverConfig& cfg, int panels) {
  validate(cfg);
  SolverState st;
  st.delta = cfg.delta;
  st.panels = panels;
  TimeSeries cur = TimeSeries::constant(u0, cfg.delta, panels);
  if (cfg.keep_iterates) st.iterates.push_back(cur);
  st.norm_history.push_back(series_xsb_norm(cur, cfg));
  const double scale = std::max(st.norm_history.front(), 1e-300);
  for (int it = 1; it <= cfg.max_iter; ++it) {
    TimeSeries next = duhamel_step(cur, u0, cfg);
    st.iterations = it;
    if (!finite(next)) {
      st.verdict = SolverVerdict::diverged;
      st.diagnostics = "non-finite iterate";
      cur = std::move(next);
      break;
    }
    const TimeSeries diff = difference(next, cur);
    const double d = series_xsb_norm(diff, cfg);
    if (!st.differences.empty()) {
      const double prev = st.differences.back();
      st.contraction_factors.push_back(prev > 0.0 ? d / prev : (d > 0.0 ? kInf : 0.0));
    }
    st.differences.push_back(d);
    st.norm_history.push_back(series_xsb_norm(next, cfg));
    if (cfg.keep_iterates) st.iterates.push_back(next);
    cur = std::move(next);
    if (d < cfg.tol) {
      st.verdict = SolverVerdict::converged;
      break;
    }
    if (!std::isfinite(d) || d > 1e6 * scale) {
      st.verdict = SolverVerdict::diverged;
      const auto& last = diff.values.back();
      std::size_t arg = 0;
      for (std::size_t i = 0; i < last.size(); ++i)
        if (std::abs(last[i]) > std::abs(last[arg])) arg = i;
      st.first_divergent_mode = arg;
      st.diagnostics = "iterate differences grew past 1e6 times the initial norm";
      break;
    }
  }
  st.solution = std::move(cur);
  if (st.converged()) st.residual = pde_residual(st.solution, cfg.sign);
  return st;
}

SolverState picard_solve(const SpectralField& u0, const SolverConfig& cfg) {
  validate(cfg);
  if (cfg.panels > 0) return picard_fixed(u0, cfg, cfg.panels);
  int m = 1;
  SolverState coarse = picard_fixed(u0, cfg, m);
  while (2 * m <= cfg.max_panels) {
    SolverState fine = picard_fixed(u0, cfg, 2 * m);
    if (coarse.converged() && fine.converged()) {
      double change = 0.0;
      for (std::size_t j = 0; j < coarse.solution.nodes(); ++j) {
        auto a = fine.solution.interaction_at(coarse.solution.node_time(j));
        for (std::size_t i = 0; i < a.size(); ++i) a[i] -= coarse.solution.values[j][i];
        change = std::max(change, l2(fine.solution.grid, a));
      }
      if (change < cfg.tol / 10.0) return fine;
    } else if (!coarse.converged() && !fine.converged() && 2 * m >= 8) {
      return fine;  // failure persists under refinement
    }
    coarse = std::move(fine);
    m *= 2;
  }
  coarse.diagnostics += coarse.diagnostics.empty() ? "" : "; ";
  coarse.diagnostics += "panel refinement did not settle at max_panels";
  return coarse;
}

Evolution evolve(const SpectralField& u0, const SolverConfig& cfg, double t_final, const std::vector<double>& outputs) {
  Evolution ev;
  for (double t : outputs)
    if (t < 0.0 || t > t_final) throw std::invalid_argument("evolve: output time outside [0, t_final]");
  ev.times = outputs;
  ev.states.assign(outputs.size(), to_frequency(u0));
  std::vector<char> done(outputs.size(), 0);
  SpectralField cur = to_frequency(u0);
  double t0 = 0.0;
  while (true) {
    const double step = std::min(cfg.delta, t_final - t0);
    SolverConfig c = cfg;
    c.delta = step;
    if (step <= 0.0) break;
    SolverState st = picard_solve(cur, c);
    if (!st.converged()) ev.converged = false;
    for (std::size_t k = 0; k < outputs.size(); ++k)
      if (!done[k] && outputs[k] <= t0 + step + 1e-14) {
        ev.states[k] = st.solution.at(outputs[k] - t0);
        done[k] = 1;
      }
    cur = st.solution.at(step);
    ev.steps.push_back(std::move(st));
    t0 += step;
    if (t0 >= t_final - 1e-14 || !ev.converged) break;
  }
  for (std::size_t k = 0; k < outputs.size(); ++k)
    if (!done[k]) ev.converged = false;
  return ev;
}

LipschitzResult flowmap_lipschitz_probe(const SpectralField& u0, const SpectralField& v0, const SolverConfig& cfg) {
  LipschitzResult res;
  SpectralField d = to_frequency(u0);
  const SpectralField fv = to_frequency(v0);
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] -= fv.values[i];
  const double data_dist = fl_norm(d, FLParams(cfg.params.r, cfg.params.s));
  const SolverState su = picard_solve(u0, cfg);
  const SolverState sv = picard_fixed(v0, cfg, su.panels);
  res.converged = su.converged() && sv.converged();
  if (data_dist == 0.0) {
    res.degenerate = true;
    return res;
  }
  res.ratio = series_xsb_norm(difference(su.solution, sv.solution), cfg) / data_dist;
  return res;
}

ConservationReport conservation_check(const SolverState& state) {
  ConservationReport rep;
  const TimeSeries& u = state.solution;
  if (u.values.empty()) return rep;
  const Grid& g = u.grid;
  const SpectralField start = u.at(0.0);
  const auto zero = static_cast<std::size_t>(g.index_of_mode(0));
  auto l2sq = [&](const SpectralField& f) {
    double a = 0.0;
    for (const cd& z : f.values) a += std::norm(z);
    return a * g.dxi() / kTwoPi;
  };
  const cd mass0 = start.values[zero];
  const double e0 = l2sq(start);
  std::vector<double> times{0.0, u.delta};
  for (std::size_t j = 0; j < u.nodes(); ++j) times.push_back(u.node_time(j));
  for (double t : times) {
    const SpectralField f = u.at(t);
    rep.mass_drift = std::max(rep.mass_drift, std::abs(f.values[zero] - mass0) / std::max(std::abs(mass0), 1.0));
    rep.l2_drift = std::max(rep.l2_drift, e0 > 0.0 ? std::abs(l2sq(f) - e0) / e0 : l2sq(f));
  }
  return rep;
}

SpectralField dilate(const SpectralField& u0, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be positive");
  const SpectralField p = to_physical(u0);
  SpectralField out{Grid(p.grid.size(), p.grid.length() / lambda), p.values, Side::physical};
  for (cd& z : out.values) z *= lambda;
  return u0.side == Side::physical ? out : to_frequency(out);
}

LifespanResult lifespan_experiment(const SpectralField& u0, const std::vector<double>& lambdas, const SolverConfig& cfg,
                                   double resolution) {
  validate(cfg);
  if (lambdas.size() < 2) throw std::invalid_argument("lifespan: need at least two lambdas");
  LifespanResult res;
  res.predicted = lifespan_exponent(cfg.params.r);
  double guess = cfg.delta;
  std::vector<double> ln, ld;
  for (double lam : lambdas) {
    LifespanPoint pt;
    pt.lambda = lam;
    const SpectralField u = dilate(u0, lam);
    pt.norm = fl_norm(u, FLParams(cfg.params.r, cfg.params.s));
    auto ok = [&](double d) {
      SolverConfig c = cfg;
      c.delta = d;
      ++pt.solves;
      return picard_solve(u, c).contracting(cfg.burn_in);
    };
    double lo = 0.0, hi = 0.0, d = guess;
    if (ok(d)) {
      lo = d;
      for (int k = 0; k < 60 && hi == 0.0; ++k) {
        d *= 2.0;
        if (ok(d)) lo = d; else hi = d;
      }
    } else {
      hi = d;
      for (int k = 0; k < 60 && lo == 0.0; ++k) {
        d *= 0.5;
        if (ok(d)) lo = d; else hi = d;
      }
    }
    if (lo == 0.0 || hi == 0.0) throw std::runtime_error("lifespan: could not bracket delta*");
    while (hi / lo > 1.0 + resolution) {
      const double mid = std::sqrt(lo * hi);
      if (ok(mid)) lo = mid; else hi = mid;
    }
    pt.delta_star = lo;
    guess = lo;
    if (!res.points.empty() && !(pt.delta_star < res.points.back().delta_star)) res.monotone = false;
    res.points.push_back(pt);
    ln.push_back(pt.norm);
    ld.push_back(pt.delta_star);
  }
  res.slope = fit_loglog(ln, ld).slope;
  return res;
}

SpectralField soliton(const Grid& g, double c, double x0) {
  SpectralField f = SpectralField::zeros(g, Side::physical);
  const double a = std::sqrt(2.0 * c), k = std::sqrt(c);
  for (std::size_t j = 0; j < g.size(); ++j) f.values[j] = a / std::cosh(k * (g.x(j) - x0));
  return to_frequency(f);
}

}  // namespace airylab
