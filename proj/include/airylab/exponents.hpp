#pragma once

// Exponent bookkeeping for the trilinear estimate on the region
// |xi2 - xi3| >= |xi2 + xi3|: hypothesis checks for the (p, p0, p1) lemma and
// the interpolation search producing the derivative split (s0, s1).

#include <string>
#include <vector>

namespace airylab {

struct Lemma3Check {
  bool accepted = false;
  double theta = 0.0;                   // 3/p' - 2/p1'
  std::vector<std::string> violations;  // empty iff accepted
};

Lemma3Check validate_lemma3_params(double p, double p0, double p1, double tol = 1e-12);

struct T2cBundle {
  double r = 0.0;
  double s0 = 0.0, s1 = 0.0;
  double theta = 0.0;
  double q0 = 0.0, q1 = 0.0;
  double p = 0.0, p0 = 0.0, p1 = 0.0;
  // True when the interpolation route is infeasible and the bundle is the
  // direct value s0 = s1 = 1/(3r) from the linear estimate (r >= 2).
  bool direct = false;
  double min_slack = 0.0;
  std::vector<std::string> violations;  // of the interpolation route, if any
};

// Interpolation conditions and constraints for a given (r, theta, q0).
T2cBundle t2c_candidate(double r, double theta, double q0);

// Independent re-check of every constraint on a bundle; returns violations.
std::vector<std::string> t2c_recheck(const T2cBundle& b, double tol = 1e-12);

// Grid search over theta in (0, 1), q0 in (4/3, 2) maximising the smallest
// constraint slack. Falls back to the direct bundle when nothing is feasible.
T2cBundle t2c_exponents(double r, int theta_steps = 400, int q0_steps = 200);

T2cBundle t2c_direct(double r);

}  // namespace airylab
