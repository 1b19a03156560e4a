#pragma once

// Picard iteration for u_t + u_xxx + sign (u^3)_x = 0 on the periodic box,
// in the interaction picture v^(xi, t) = e^{-i t xi^3} u^(xi, t):
//   v(t) = u0^ - sign int_0^t e^{-i t' xi^3} i xi F(u^3)(t') dt'.
// Time is discretized by panels of 8 Gauss-Legendre nodes; the cube is
// dealiased by zero padding to twice the grid size.

#include <optional>
#include <string>
#include <vector>

#include "airylab/norms.hpp"
#include "airylab/spectral_core.hpp"

namespace airylab {

struct SolverConfig {
  XsbParams params{2.0, 0.25, 0.6};
  double delta = 0.05;
  int max_iter = 60;
  double tol = 1e-10;
  int sign = 1;           // +1 focusing, -1 defocusing
  int panels = 0;         // 0: refine from 1 until halving changes less than tol/10
  int max_panels = 512;
  int burn_in = 1;        // factors before this iteration are not held to < 1
  double x_window = 3.0;  // X-norm window [-delta, (x_window - 1) delta]
  std::size_t x_samples = 256;
  bool keep_iterates = false;
};

// Throws std::invalid_argument on r outside (1, 2], s < s(r), b <= 1/r,
// delta <= 0, sign not +-1, or non-positive tolerances.
void validate(const SolverConfig& cfg);

// Node values of a function of t in [0, delta], interaction picture.
struct TimeSeries {
  Grid grid{64, kTwoPi};
  double delta = 0.0;
  int panels = 1;
  std::vector<std::vector<cd>> values;  // [node][mode]

  static TimeSeries constant(const SpectralField& u0, double delta, int panels);
  std::size_t nodes() const { return values.size(); }
  double node_time(std::size_t j) const;
  std::vector<cd> interaction_at(double t) const;  // clamped outside [0, delta]
  std::vector<cd> interaction_derivative_at(double t) const;
  SpectralField at(double t) const;  // u^(t), frequency side
};

// -sign e^{-i t xi^3} i xi F(u^3) for u^(t) = e^{i t xi^3} v.
std::vector<cd> interaction_nonlinearity(const Grid& g, const std::vector<cd>& v, double t, int sign);

// One application of the Duhamel map to the iterate u (data u0). With
// linear = true the nonlinearity is dropped.
TimeSeries duhamel_step(const TimeSeries& u, const SpectralField& u0, const SolverConfig& cfg, bool linear = false);

// X^r_{s,b} norm of a time series: clamp extension to the window, flat-top
// taper, transform in t; the modulation variable is tau - xi^3 directly.
double series_xsb_norm(const TimeSeries& u, const SolverConfig& cfg);

enum class SolverVerdict { converged, diverged, max_iter };
const char* verdict_name(SolverVerdict v);

struct SolverState {
  TimeSeries solution;
  std::vector<TimeSeries> iterates;          // only with keep_iterates
  std::vector<double> differences;           // X norm of u^(n+1) - u^(n)
  std::vector<double> contraction_factors;   // differences[n] / differences[n-1]
  std::vector<double> norm_history;          // X norm of each iterate
  int iterations = 0;
  int panels = 0;
  double delta = 0.0;
  SolverVerdict verdict = SolverVerdict::max_iter;
  double residual = 0.0;  // PDE defect between the nodes, L^2 in x
  std::optional<std::size_t> first_divergent_mode;
  std::string diagnostics;

  bool converged() const { return verdict == SolverVerdict::converged; }
  // Converged and every factor from the burn-in on is below 1.
  bool contracting(int burn_in) const;
};

// Picard iteration at a fixed number of panels.
SolverState picard_fixed(const SpectralField& u0, const SolverConfig& cfg, int panels);

// Picard iteration with panel refinement (cfg.panels == 0).
SolverState picard_solve(const SpectralField& u0, const SolverConfig& cfg);

// Repeated solves of length cfg.delta up to t_final; returns u^ at the
// requested output times (each must lie in [0, t_final]).
struct Evolution {
  std::vector<double> times;
  std::vector<SpectralField> states;
  std::vector<SolverState> steps;
  bool converged = true;
};
Evolution evolve(const SpectralField& u0, const SolverConfig& cfg, double t_final, const std::vector<double>& outputs);

struct LipschitzResult {
  double ratio = 0.0;
  bool degenerate = false;  // identical data: 0 by convention
  bool converged = true;
};
// X distance of the solutions over the FL distance of the data.
LipschitzResult flowmap_lipschitz_probe(const SpectralField& u0, const SpectralField& v0, const SolverConfig& cfg);

struct ConservationReport {
  double mass_drift = 0.0;  // max |int u(t) - int u0| / max(|int u0|, 1)
  double l2_drift = 0.0;    // max |int u(t)^2 - int u0^2| / max(int u0^2, 1e-300)
};
ConservationReport conservation_check(const SolverState& state);

// u_lambda(x) = lambda u0(lambda x) sampled on the dilated grid (L / lambda):
// the discrete problem is then an exact rescaling of the original.
SpectralField dilate(const SpectralField& u0, double lambda);

struct LifespanPoint {
  double lambda = 0.0;
  double norm = 0.0;       // ||u_lambda||_{FL^r_s}
  double delta_star = 0.0;
  int solves = 0;
};
struct LifespanResult {
  std::vector<LifespanPoint> points;
  double slope = 0.0;
  double predicted = 0.0;  // -2r/(r-1)
  bool monotone = true;
};
// For each lambda, the largest delta (5% relative) at which the Picard
// iteration contracts; the slope of log delta* against log norm.
LifespanResult lifespan_experiment(const SpectralField& u0, const std::vector<double>& lambdas, const SolverConfig& cfg,
                                   double resolution = 0.05);

// sqrt(2c) sech(sqrt(c)(x - x0)) solves the focusing equation moving at speed c.
SpectralField soliton(const Grid& g, double c, double x0);

}  // namespace airylab
