#include "airylab/probe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "airylab/exponents.hpp"
#include "airylab/fft.hpp"
#include "airylab/pushforward.hpp"

namespace airylab {

namespace {

struct IdName {
  EstimateId id;
  const char* name;
};
constexpr IdName kIds[] = {
    {EstimateId::lemma1, "lemma1"},   {EstimateId::cor_b1, "cor_b1"},   {EstimateId::cor_b2_204, "cor_b2_204"},
    {EstimateId::fs20, "fs20"},       {EstimateId::lemma2, "lemma2"},   {EstimateId::cor_t1c, "cor_t1c"},
    {EstimateId::lemma3, "lemma3"},   {EstimateId::cor_t2c, "cor_t2c"}, {EstimateId::lemma4, "lemma4"},
    {EstimateId::cor_t3c, "cor_t3c"}, {EstimateId::theorem2, "theorem2"},
};

double bracket(double v) { return std::sqrt(1.0 + v * v); }

double inv(double e) { return std::isinf(e) ? 0.0 : 1.0 / e; }

}  // namespace

const char* estimate_name(EstimateId id) {
  for (const auto& e : kIds)
    if (e.id == id) return e.name;
  return "?";
}

EstimateId estimate_from_name(const std::string& name) {
  for (const auto& e : kIds)
    if (name == e.name) return e.id;
  throw std::invalid_argument("unknown estimate id: " + name);
}

const std::vector<EstimateId>& all_estimates() {
  static const std::vector<EstimateId> ids = [] {
    std::vector<EstimateId> v;
    for (const auto& e : kIds) v.push_back(e.id);
    return v;
  }();
  return ids;
}

EstimateSpec default_spec(EstimateId id) {
  EstimateSpec s;
  s.id = id;
  switch (id) {
    case EstimateId::lemma1:
      break;
    case EstimateId::cor_b1:
      s.b = 0.5 + 0.1;
      break;
    case EstimateId::cor_b2_204:
      s.r = 1.5;
      s.rho = 4.0 / 3.0;  // 1/rho' = 1/4
      s.beta = -0.35;
      break;
    case EstimateId::fs20:
      s.r = 2.0;
      break;
    case EstimateId::lemma2:
    case EstimateId::cor_t1c: {
      s.r = 1.5;
      const double rc = conjugate_exponent(s.r);
      s.s1 = 1.0 / (4.0 * rc) - 0.5 + s.eps;
      s.s2 = 1.0 / (2.0 * rc);
      s.b = 1.0 / s.r + 0.1;
      break;
    }
    case EstimateId::lemma3: {
      const auto bundle = t2c_exponents(1.5);
      s.p = bundle.p, s.p0 = bundle.p0, s.p1 = bundle.p1;
      break;
    }
    case EstimateId::cor_t2c: {
      s.r = 1.5;
      const auto bundle = t2c_exponents(s.r);
      s.s0 = bundle.s0, s.s1 = bundle.s1;
      s.b = 1.0 / s.r + 0.1;
      break;
    }
    case EstimateId::lemma4:
      s.r = 1.5;
      s.rho = kInf;
      break;
    case EstimateId::cor_t3c:
      s.r = 1.5;
      s.rho = kInf;
      s.beta = 0.1;
      s.b = 1.0 / s.r + 0.1;
      break;
    case EstimateId::theorem2:
      s.r = 1.5;
      s.s = sr_threshold(1.5);
      s.b = 1.0 / 1.5 + 0.1;
      s.b2 = -0.1;
      break;
  }
  return s;
}

FamilySpec default_family(EstimateId id) {
  FamilySpec f;
  switch (id) {
    case EstimateId::lemma1:
    case EstimateId::cor_b1:
    case EstimateId::theorem2:
      f.kind = FamilyKind::gaussian;
      break;
    case EstimateId::cor_b2_204:
      f.kind = FamilyKind::random_phase;
      break;
    case EstimateId::fs20:
      f.kind = FamilyKind::wave_packet;
      f.avoid_origin = true;
      break;
    case EstimateId::lemma2:
    case EstimateId::cor_t1c:
      f.kind = FamilyKind::two_bump_separated;
      break;
    case EstimateId::lemma3:
    case EstimateId::cor_t2c:
    case EstimateId::lemma4:
    case EstimateId::cor_t3c:
      f.kind = FamilyKind::dyadic_bump;
      f.avoid_origin = true;
      break;
  }
  return f;
}

std::vector<std::string> hypothesis_violations(const EstimateSpec& s) {
  std::vector<std::string> v;
  auto need = [&](bool ok, const char* what) {
    if (!ok) v.emplace_back(what);
  };
  const double tol = 1e-12;
  switch (s.id) {
    case EstimateId::lemma1:
    case EstimateId::cor_b1:
      need(s.q >= 1.0, "1 <= q");
      need(s.q <= s.r1 && s.q <= s.r2, "q <= r1, r2");
      need(s.r1 <= s.p && s.r2 <= s.p, "r1, r2 <= p");
      need(std::abs(inv(s.p) + inv(s.q) - inv(s.r1) - inv(s.r2)) < tol, "1/p + 1/q = 1/r1 + 1/r2");
      if (s.id == EstimateId::cor_b1) need(s.b > inv(s.r1) && s.b > inv(s.r2), "b_i > 1/r_i");
      break;
    case EstimateId::cor_b2_204: {
      need(s.r > 1.0 && std::isfinite(s.r), "1 < r < inf");
      need(s.rho >= 1.0, "rho >= 1");
      if (!v.empty()) break;
      const double inv_rho_c = 1.0 - inv(s.rho);
      need(inv_rho_c >= 0.0 && inv_rho_c <= 1.0 - 1.0 / s.r + tol, "0 <= 1/rho' <= 1/r'");
      need(s.beta < -inv_rho_c, "beta < -1/rho'");
      break;
    }
    case EstimateId::fs20:
      need(s.r > 1.0 && std::isfinite(s.r), "1 < r < inf");
      break;
    case EstimateId::lemma2:
    case EstimateId::cor_t1c: {
      need(s.r >= 1.0 && s.r <= 2.0, "1 <= r <= 2");
      if (!v.empty()) break;
      const double inv_rc = 1.0 - 1.0 / s.r;
      need(s.s1 > inv_rc / 4.0 - 0.5, "s1 > 1/(4r') - 1/2");
      need(s.s2 >= inv_rc / 2.0 - tol, "s2 >= 1/(2r')");
      if (s.id == EstimateId::cor_t1c) need(s.b > 1.0 / s.r, "b > 1/r");
      break;
    }
    case EstimateId::lemma3: {
      const auto c = validate_lemma3_params(s.p, s.p0, s.p1, 1e-9);
      v.insert(v.end(), c.violations.begin(), c.violations.end());
      break;
    }
    case EstimateId::cor_t2c:
      need(s.r > 1.0 && s.r < 2.0, "1 < r < 2");
      need(s.s0 >= 0.0 && s.s1 >= 0.0, "s0, s1 >= 0");
      need(std::abs(s.s0 + 2.0 * s.s1 - 1.0 / s.r) < 1e-9, "s0 + 2 s1 = 1/r");
      need(s.b > 1.0 / s.r, "b > 1/r");
      break;
    case EstimateId::lemma4:
    case EstimateId::cor_t3c:
      need(s.r >= 1.0 && s.r < s.rho, "1 <= r < rho");
      if (s.id == EstimateId::cor_t3c) {
        need(s.beta > inv(s.rho), "beta > 1/rho");
        need(s.b > 1.0 / s.r, "b > 1/r");
      }
      break;
    case EstimateId::theorem2:
      need(s.r > 1.0 && s.r <= 2.0, "1 < r <= 2");
      if (!v.empty()) break;
      need(s.s >= sr_threshold(s.r) - tol, "s >= s(r)");
      need(s.b > 1.0 / s.r, "b > 1/r");
      need(s.b2 < 0.0, "b' < 0");
      break;
  }
  return v;
}

void validate(const EstimateSpec& spec) {
  auto v = hypothesis_violations(spec);
  if (v.empty()) return;
  std::ostringstream os;
  os << estimate_name(spec.id) << ": hypothesis violated:";
  for (const auto& s : v) os << " [" << s << "]";
  throw HypothesisError(os.str(), std::move(v));
}

std::vector<Grid> default_refinements() {
  return {Grid(64, 8.0 * kPi), Grid(128, 16.0 * kPi), Grid(256, 32.0 * kPi)};
}

double weighted_fl_norm(const SpectralField& u0, double r, double s, double riesz) {
  const SpectralField f = to_frequency(u0);
  std::vector<double> mag(f.values.size());
  const MultiplierSpec rz{MultiplierKind::riesz, riesz};
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double xi = f.grid.xi(i);
    double w = std::pow(bracket(xi), s);
    if (riesz != 0.0) w *= multiplier_symbol(rz, xi);
    mag[i] = w * std::abs(f.values[i]);
  }
  return lebesgue_sum(mag, conjugate_exponent(r), f.grid.dxi() / kTwoPi);
}

double bilinear_airy_mixed_norm(const SpectralField& u0, const SpectralField& v0, double p, double q) {
  const SpectralField u = to_frequency(u0), v = to_frequency(v0);
  const Grid& g = u.grid;
  const double pc = conjugate_exponent(p), qc = conjugate_exponent(q);
  const double h = g.dxi() / 8.0;
  std::vector<double> rows(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.xi(i);
    if (xi == 0.0) continue;
    const double ymax = 2.0 * g.xi_max() + std::abs(xi);
    const auto ny = static_cast<std::size_t>(std::ceil(ymax / h));
    double acc = 0.0;
    for (std::size_t k = 0; k < ny; ++k) {
      const double y = (static_cast<double>(k) + 0.5) * h;
      const cd sum = u.at(0.5 * (xi + y)) * v.at(0.5 * (xi - y)) + u.at(0.5 * (xi - y)) * v.at(0.5 * (xi + y));
      const double a = std::abs(sum);
      if (a == 0.0) continue;
      // |xi|^{1/p} y^{1/p} |sum| / (3 |xi| y), measured with dtau = 1.5 |xi| y dy
      const double val = std::pow(std::abs(xi) * y, 1.0 / p) * a / (3.0 * std::abs(xi) * y);
      if (std::isinf(pc))
        acc = std::max(acc, val);
      else
        acc += std::pow(val, pc) * 1.5 * std::abs(xi) * y * h;
    }
    rows[i] = std::isinf(pc) ? acc : std::pow(acc / kTwoPi, 1.0 / pc);
  }
  return lebesgue_sum(rows, qc, g.dxi() / kTwoPi);
}

double airy_spacetime_lebesgue(const SpectralField& u0, double q, double t_window) {
  const SpectralField f = to_frequency(u0);
  const Grid& g = f.grid;
  const double xm = g.xi_max();
  const double dt_max = kPi / (4.0 * xm * xm * xm);
  const auto nt = static_cast<std::size_t>(std::ceil(t_window / dt_max));
  const double dt = t_window / static_cast<double>(nt);
  double acc = 0.0;
  for (std::size_t m = 0; m <= nt; ++m) {
    const double t = dt * static_cast<double>(m);
    const SpectralField ut = to_physical(airy_propagate(f, t));
    double row = 0.0;
    for (const cd& v : ut.values) row += std::pow(std::abs(v), q);
    const double wt = (m == 0 || m == nt) ? 0.5 : 1.0;
    acc += wt * row * g.dx() * dt;
  }
  return std::pow(acc, 1.0 / q);
}

namespace {

std::vector<Envelope> envelopes(const FamilyMember& m, std::size_t n, const ProbeOptions& opt) {
  const double w = std::sqrt(static_cast<double>(n)) / opt.envelope_tau_width;
  std::vector<Envelope> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({w, m.modulation[i] * 3.0 / w});
  return e;
}

double x_norm(const SpectralField& u0, const Envelope& e, double r, double s, double b, double riesz = 0.0) {
  return weighted_fl_norm(u0, r, s, riesz) * envelope_norm(e, conjugate_exponent(r), b);
}

SpectrumRows make_rows(const Grid& g, int order, const TauKernel& k) {
  const double t = order * std::pow(g.xi_max(), 3);
  return SpectrumRows(g, -t, t, k);
}

}  // namespace

SideValues evaluate(const EstimateSpec& s, const FamilyMember& m, const Grid& g, const ProbeOptions& opt) {
  const SpectralField u0 = m.data[0].sample(g), u1 = m.data[1].sample(g), u2 = m.data[2].sample(g);
  SideValues out;
  switch (s.id) {
    case EstimateId::lemma1: {
      out.lhs = bilinear_airy_mixed_norm(u0, u1, s.p, s.q);
      out.rhs = weighted_fl_norm(u0, s.r1, 0.0) * weighted_fl_norm(u1, s.r2, 0.0);
      break;
    }
    case EstimateId::cor_b1: {
      const auto env = envelopes(m, 2, opt);
      auto rows = make_rows(g, 2, product_kernel(env));
      const double a = inv(s.p);
      deposit_pairs(rows, u0, u1, [a](double x1, double x2) { return std::pow(std::abs(x1 - x2), a); });
      out.lhs = spectrum_norm(rows, conjugate_exponent(s.p), conjugate_exponent(s.q),
                              [a](double xi) { return std::pow(std::abs(xi), a); });
      out.rhs = x_norm(u0, env[0], s.r1, 0.0, s.b) * x_norm(u1, env[1], s.r2, 0.0, s.b);
      break;
    }
    case EstimateId::cor_b2_204: {
      // I_+^{a}(I^{a} u2, u1) with a = 1/rho'; u2 <- data 1, u1 <- data 0
      const auto env = envelopes(m, 2, opt);
      auto rows = make_rows(g, 2, product_kernel(env));
      const double a = 1.0 - inv(s.rho);
      deposit_pairs(rows, u1, u0, [a](double xa, double xb) {
        return std::pow(std::abs(xa), a) * std::pow(std::abs(xa + 2.0 * xb), a);
      });
      const double rc = conjugate_exponent(s.r);
      const double beta = s.beta;
      out.lhs = spectrum_norm(rows, rc, rc, {}, [beta](double sg) { return std::pow(bracket(sg), beta); });
      out.rhs = x_norm(u0, env[0], conjugate_exponent(s.rho), 0.0, -s.beta) * x_norm(u1, env[1], s.r, 0.0, 0.0);
      break;
    }
    case EstimateId::fs20: {
      const double q = 3.0 * s.r;
      out.lhs = airy_spacetime_lebesgue(u0, q, g.length() * opt.fs_time_per_length);
      out.rhs = weighted_fl_norm(u0, s.r, 0.0, -1.0 / q);
      break;
    }
    case EstimateId::lemma2:
    case EstimateId::cor_t1c:
    case EstimateId::lemma3:
    case EstimateId::cor_t2c:
    case EstimateId::lemma4:
    case EstimateId::cor_t3c:
    case EstimateId::theorem2: {
      const bool enveloped =
          s.id == EstimateId::cor_t1c || s.id == EstimateId::cor_t2c || s.id == EstimateId::cor_t3c || s.id == EstimateId::theorem2;
      const auto env = envelopes(m, 3, opt);
      TrilinearMask mask = TrilinearMask::unmasked;
      if (s.id == EstimateId::lemma2 || s.id == EstimateId::cor_t1c) mask = TrilinearMask::T;
      if (s.id == EstimateId::lemma3 || s.id == EstimateId::cor_t2c) mask = TrilinearMask::T_ge;
      if (s.id == EstimateId::lemma4 || s.id == EstimateId::cor_t3c) mask = TrilinearMask::T_le;
      const double rc = conjugate_exponent(s.id == EstimateId::lemma3 ? s.p : s.r);
      if (!enveloped) {
        DensityRows rows(g, opt.density_bin);
        resolve_triples(rows, u0, u1, u2, mask, s.region);
        out.lhs = density_norm(rows, rc, rc);
      } else {
        auto rows = make_rows(g, 3, product_kernel(env));
        deposit_triples(rows, u0, u1, u2, mask, s.region);
        if (s.id == EstimateId::theorem2) {
          const double sr = s.s, b2 = s.b2;
          out.lhs = spectrum_norm(
              rows, rc, rc, [sr](double xi) { return std::pow(bracket(xi), sr) * std::abs(xi); },
              [b2](double sg) { return std::pow(bracket(sg), b2); });
        } else {
          out.lhs = spectrum_norm(rows, rc, rc, {});
        }
      }
      switch (s.id) {
        case EstimateId::lemma2:
          out.rhs = weighted_fl_norm(u0, s.r, s.s1) * weighted_fl_norm(u1, s.r, s.s1) * weighted_fl_norm(u2, s.r, s.s2);
          break;
        case EstimateId::cor_t1c:
          out.rhs = x_norm(u0, env[0], s.r, s.s1, s.b) * x_norm(u1, env[1], s.r, s.s1, s.b) *
                    x_norm(u2, env[2], s.r, s.s2, s.b);
          break;
        case EstimateId::lemma3: {
          const double a = -1.0 / (2.0 * s.p);
          out.rhs = weighted_fl_norm(u0, s.p0, 0.0) * weighted_fl_norm(u1, s.p1, 0.0, a) * weighted_fl_norm(u2, s.p1, 0.0, a);
          break;
        }
        case EstimateId::cor_t2c:
          out.rhs = x_norm(u0, env[0], s.r, 0.0, s.b, -s.s0) * x_norm(u1, env[1], s.r, 0.0, s.b, -s.s1) *
                    x_norm(u2, env[2], s.r, 0.0, s.b, -s.s1);
          break;
        case EstimateId::lemma4: {
          const double a = -1.0 / (2.0 * s.r);
          out.rhs = weighted_fl_norm(u0, s.rho, 0.0) * weighted_fl_norm(u1, s.r, 0.0, a) * weighted_fl_norm(u2, s.r, 0.0, a);
          break;
        }
        case EstimateId::cor_t3c: {
          const double a = -1.0 / (2.0 * s.r);
          out.rhs = x_norm(u0, env[0], s.rho, 0.0, s.beta) * x_norm(u1, env[1], s.r, 0.0, s.b, a) *
                    x_norm(u2, env[2], s.r, 0.0, s.b, a);
          break;
        }
        case EstimateId::theorem2:
          out.rhs = x_norm(u0, env[0], s.r, s.s, s.b) * x_norm(u1, env[1], s.r, s.s, s.b) * x_norm(u2, env[2], s.r, s.s, s.b);
          break;
        default:
          break;
      }
      break;
    }
  }
  return out;
}

EstimateReport probe(const EstimateSpec& spec, const FamilySpec& family, const std::vector<Grid>& refinements,
                     const ProbeOptions& opt) {
  validate(spec);
  if (refinements.empty()) throw std::invalid_argument("probe: no refinements");
  for (std::size_t k = 1; k < refinements.size(); ++k)
    if (!(refinements[k].dxi() < refinements[k - 1].dxi()))
      throw std::invalid_argument("probe: refinements must have decreasing dxi");
  EstimateReport rep;
  rep.spec = spec;
  rep.family = family;
  const auto members = generate_family(family);
  for (const Grid& g : refinements) {
    RefinementReport rr;
    rr.fingerprint = g.fingerprint();
    rr.n = g.size();
    rr.length = g.length();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const SideValues sv = evaluate(spec, members[i], g, opt);
      if (!(sv.rhs >= opt.degenerate_rhs) || !std::isfinite(sv.lhs)) {
        ++rr.dropped;
        continue;
      }
      SampleRow row{i, sv.lhs, sv.rhs, sv.lhs / sv.rhs};
      rr.max_ratio = std::max(rr.max_ratio, row.ratio);
      rr.samples.push_back(row);
      ++rr.kept;
    }
    rep.refinements.push_back(std::move(rr));
  }
  bool ok = true;
  for (std::size_t k = 1; k < rep.refinements.size(); ++k) {
    const double a = rep.refinements[k - 1].max_ratio, b = rep.refinements[k].max_ratio;
    const double gr = a > 0.0 ? b / a : (b > 0.0 ? kInf : 1.0);
    rep.growth.push_back(gr);
    if (!(gr < opt.pass_growth)) ok = false;
  }
  for (const auto& rr : rep.refinements)
    if (!(rr.max_ratio > 0.0) || !std::isfinite(rr.max_ratio)) ok = false;
  const double first = rep.refinements.front().max_ratio, last = rep.refinements.back().max_ratio;
  rep.total_growth = first > 0.0 ? last / first : kInf;
  rep.pass = ok;
  rep.verdict = ok ? "PASS" : "FAIL";
  return rep;
}

}  // namespace airylab
