#include "airylab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace airylab {

namespace {

double conj(double p) { return p / (p - 1.0); }

// Records a strict inequality lo < hi; returns its slack.
struct Checker {
  std::vector<std::string> violations;
  double min_slack = std::numeric_limits<double>::infinity();
  double tol;

  void less(double lo, double hi, const char* what) {
    const double slack = hi - lo;
    min_slack = std::min(min_slack, slack);
    if (!(slack > 0.0)) violations.emplace_back(what);
  }
  void equal(double a, double b, const char* what) {
    if (!(std::abs(a - b) <= tol * std::max(1.0, std::abs(a)))) violations.emplace_back(what);
  }
};

void check_lemma3(Checker& c, double p, double p0, double p1, double theta) {
  c.less(1.0, p1, "1 < p1");
  c.less(p1, p, "p1 < p");
  c.less(p, p0, "p < p0");
  c.less(p0, 1e12, "p0 < inf");
  c.less(p, conj(p0), "p < p0'");
  c.equal(3.0 / p, 1.0 / p0 + 2.0 / p1, "3/p = 1/p0 + 2/p1");
  c.less(2.0 / p1, 1.0 + 1.0 / p, "2/p1 < 1 + 1/p");
  c.less(0.0, theta, "theta > 0");
  c.less(theta, 1.0, "theta < 1");
  c.less(1.0, theta * conj(p), "theta p' > 1");
  c.less(theta * conj(p), 2.0, "theta p' < 2");
  c.equal(theta, 1.0 / conj(p0), "theta = 1/p0'");
  c.less(0.0, (1.0 - theta) * p, "(1-theta) p > 0");
  c.less((1.0 - theta) * p, 1.0, "(1-theta) p < 1");
  c.less(1.0, conj(p0) / p, "p0'/p > 1");
  if ((1.0 - theta) * p < 1.0) c.less(conj(p0) / p, 1.0 / (1.0 - (1.0 - theta) * p), "p0'/p < 1/(1-(1-theta)p)");
}

}  // namespace

Lemma3Check validate_lemma3_params(double p, double p0, double p1, double tol) {
  Lemma3Check out;
  if (!(p > 1.0) || !(p0 > 1.0) || !(p1 > 1.0)) {
    out.violations.emplace_back("exponents must exceed 1");
    return out;
  }
  out.theta = 3.0 / conj(p) - 2.0 / conj(p1);
  Checker c{{}, std::numeric_limits<double>::infinity(), tol};
  check_lemma3(c, p, p0, p1, out.theta);
  out.violations = std::move(c.violations);
  out.accepted = out.violations.empty();
  return out;
}

T2cBundle t2c_candidate(double r, double theta, double q0) {
  T2cBundle b;
  b.r = r;
  b.theta = theta;
  b.q0 = q0;
  const double inv_q1 = 0.5 * (1.5 - 1.0 / q0);
  b.q1 = 1.0 / inv_q1;
  const double inv_p = (1.0 / r - theta / 2.0) / (1.0 - theta);
  const double inv_p0 = (1.0 / r - theta / q0) / (1.0 - theta);
  const double inv_p1 = (1.0 / r - theta * inv_q1) / (1.0 - theta);
  b.p = 1.0 / inv_p;
  b.p0 = 1.0 / inv_p0;
  b.p1 = 1.0 / inv_p1;
  b.s0 = theta / (3.0 * q0);
  b.s1 = (1.0 - theta) * inv_p / 2.0 + theta * inv_q1 / 3.0;
  b.violations = t2c_recheck(b, 1e-9);
  Checker c{{}, std::numeric_limits<double>::infinity(), 1e-9};
  if (inv_p > 0 && inv_p0 > 0 && inv_p1 > 0 && inv_p < 1 && inv_p0 < 1 && inv_p1 < 1) {
    check_lemma3(c, b.p, b.p0, b.p1, 3.0 / conj(b.p) - 2.0 / conj(b.p1));
    c.less(4.0 / 3.0, q0, "4/3 < q0");
    c.less(q0, 2.0, "q0 < 2");
    c.less(2.0, b.q1, "2 < q1");
    b.min_slack = c.min_slack;
  } else {
    b.min_slack = -1.0;
  }
  return b;
}

std::vector<std::string> t2c_recheck(const T2cBundle& b, double tol) {
  std::vector<std::string> v;
  if (b.direct) {
    if (!(b.r >= 2.0 - tol)) v.emplace_back("direct bundle needs r >= 2");
    if (std::abs(b.s0 + 2.0 * b.s1 - 1.0 / b.r) > tol) v.emplace_back("s0 + 2 s1 = 1/r");
    if (b.s0 < 0 || b.s1 < 0) v.emplace_back("s0, s1 >= 0");
    return v;
  }
  for (double e : {b.p, b.p0, b.p1, b.q0, b.q1})
    if (!(e > 1.0) || !std::isfinite(e)) {
      v.emplace_back("exponents in (1, inf)");
      return v;
    }
  const auto lemma = validate_lemma3_params(b.p, b.p0, b.p1, tol * 1e3);
  v.insert(v.end(), lemma.violations.begin(), lemma.violations.end());
  if (!(4.0 / 3.0 < b.q0 && b.q0 < 2.0 && 2.0 < b.q1)) v.emplace_back("4/3 < q0 < 2 < q1");
  if (std::abs(1.0 / b.q0 + 2.0 / b.q1 - 1.5) > tol) v.emplace_back("3/2 = 1/q0 + 2/q1");
  const double t = b.theta;
  if (!(t > 0.0 && t < 1.0)) v.emplace_back("theta in (0, 1)");
  if (std::abs((1 - t) / b.p + t / 2.0 - 1.0 / b.r) > tol) v.emplace_back("1/r = (1-theta)/p + theta/2");
  if (std::abs((1 - t) / b.p0 + t / b.q0 - 1.0 / b.r) > tol) v.emplace_back("1/r = (1-theta)/p0 + theta/q0");
  if (std::abs((1 - t) / b.p1 + t / b.q1 - 1.0 / b.r) > tol) v.emplace_back("1/r = (1-theta)/p1 + theta/q1");
  if (std::abs(b.s0 - t / (3.0 * b.q0)) > tol) v.emplace_back("s0 = theta/(3 q0)");
  if (std::abs(b.s1 - ((1 - t) / (2.0 * b.p) + t / (3.0 * b.q1))) > tol) v.emplace_back("s1 formula");
  if (std::abs(b.s0 + 2.0 * b.s1 - 1.0 / b.r) > tol) v.emplace_back("s0 + 2 s1 = 1/r");
  if (b.s0 < 0 || b.s1 < 0) v.emplace_back("s0, s1 >= 0");
  return v;
}

T2cBundle t2c_direct(double r) {
  T2cBundle b;
  b.r = r;
  b.s0 = b.s1 = 1.0 / (3.0 * r);
  b.direct = true;
  return b;
}

T2cBundle t2c_exponents(double r, int theta_steps, int q0_steps) {
  if (!(r > 1.0)) throw std::domain_error("t2c_exponents: r must exceed 1");
  T2cBundle best;
  best.min_slack = -std::numeric_limits<double>::infinity();
  bool found = false;
  std::vector<std::string> last_violations;
  for (int i = 1; i < theta_steps; ++i) {
    const double theta = static_cast<double>(i) / theta_steps;
    for (int j = 1; j < q0_steps; ++j) {
      const double q0 = 4.0 / 3.0 + (2.0 - 4.0 / 3.0) * j / q0_steps;
      T2cBundle c = t2c_candidate(r, theta, q0);
      if (!c.violations.empty()) {
        if (!found) last_violations = c.violations;
        continue;
      }
      if (!found || c.min_slack > best.min_slack) {
        best = c;
        found = true;
      }
    }
  }
  if (found) return best;
  T2cBundle d = t2c_direct(r);
  d.violations = last_violations;
  if (r < 2.0) d.violations.emplace_back("direct bundle only covers r >= 2");
  return d;
}

}  // namespace airylab
