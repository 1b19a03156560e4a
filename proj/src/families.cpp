#include "airylab/families.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace airylab {

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::gaussian: return "gaussian";
    case FamilyKind::wave_packet: return "wave_packet";
    case FamilyKind::dyadic_bump: return "dyadic_bump";
    case FamilyKind::random_phase: return "random_phase";
    case FamilyKind::two_bump_separated: return "two_bump_separated";
  }
  return "?";
}

FamilyKind family_from_name(const std::string& name) {
  for (auto k : {FamilyKind::gaussian, FamilyKind::wave_packet, FamilyKind::dyadic_bump, FamilyKind::random_phase,
                 FamilyKind::two_bump_separated})
    if (name == family_name(k)) return k;
  throw std::invalid_argument("unknown family kind: " + name);
}

double smooth_bump(double xi, double a, double b) {
  const double s = (2.0 * xi - a - b) / (b - a);
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

namespace {

double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / s), b = std::exp(-1.0 / (1.0 - s));
  return a / (a + b);
}

}  // namespace

cd Profile::operator()(double xi) const {
  const double cut = 1.0 - smooth_step(std::abs(xi) - (band - 1.0));
  if (cut == 0.0) return {};
  cd acc{};
  for (const auto& t : terms) {
    double amp = 0.0;
    if (t.shape == ProfileTerm::Shape::gauss) {
      const double z = (xi - t.a) / t.b;
      if (std::abs(z) > 12.0) continue;
      amp = std::exp(-0.5 * z * z);
    } else {
      amp = smooth_bump(xi, t.a, t.b);
    }
    if (amp == 0.0) continue;
    acc += t.coef * amp * std::polar(1.0, -t.shift * xi);
  }
  return acc * cut;
}

SpectralField Profile::sample(const Grid& g) const {
  SpectralField f = SpectralField::zeros(g, Side::frequency);
  for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = (*this)(g.xi(i));
  return f;
}

std::vector<FamilyMember> generate_family(const FamilySpec& spec) {
  if (spec.count == 0) throw std::invalid_argument("family count must be positive");
  std::vector<FamilyMember> out;
  out.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) {
    std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(spec.kind)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(gen); };
    auto sign = [&] { return unit(gen) < 0.5 ? -1.0 : 1.0; };
    auto phase = [&] { return std::polar(1.0, uni(0.0, kTwoPi)); };
    const double lo_abs = spec.avoid_origin ? 1.5 : 0.0;

    FamilyMember m;
    for (int j = 0; j < 3; ++j) {
      Profile& p = m.data[static_cast<std::size_t>(j)];
      switch (spec.kind) {
        case FamilyKind::gaussian: {
          const double w = spec.width * uni(0.5, 1.5);
          const double c = spec.avoid_origin ? sign() * uni(std::max(lo_abs + 3.0 * w, 2.0), 6.0)
                                             : uni(-spec.center, spec.center);
          p.terms.push_back({ProfileTerm::Shape::gauss, c, w, phase(), uni(-2.0, 2.0)});
          break;
        }
        case FamilyKind::wave_packet: {
          const double w = spec.width * uni(0.3, 0.6);
          const double c = sign() * uni(std::max(2.0, lo_abs + 4.0 * w), 6.0);
          p.terms.push_back({ProfileTerm::Shape::gauss, c, w, phase(), uni(-4.0, 4.0)});
          break;
        }
        case FamilyKind::dyadic_bump: {
          const int lev = static_cast<int>(uni(0.0, 3.0));  // supports in [2^l, 2^(l+1)]
          const double a = std::ldexp(1.0, lev) * (spec.avoid_origin && lev == 0 ? 1.5 : 1.0);
          const double b = std::ldexp(1.0, lev + 1) * (lev == 2 ? 0.85 : 1.0);
          const double s = sign();
          p.terms.push_back({ProfileTerm::Shape::bump, s > 0 ? a : -b, s > 0 ? b : -a, phase(), uni(-2.0, 2.0)});
          break;
        }
        case FamilyKind::random_phase: {
          const int nterms = 6;
          for (int t = 0; t < nterms; ++t) {
            const double c = spec.avoid_origin ? sign() * uni(2.0, 6.0) : uni(-6.0, 6.0);
            p.terms.push_back({ProfileTerm::Shape::gauss, c, 0.4 * spec.width, phase() * uni(0.2, 1.0), uni(-3.0, 3.0)});
          }
          break;
        }
        case FamilyKind::two_bump_separated: {
          // data 0 and 1 high, data 2 low
          if (j < 2) {
            const double c = sign() * uni(spec.separation, 6.5);
            p.terms.push_back({ProfileTerm::Shape::gauss, c, 0.35 * spec.width, phase(), uni(-2.0, 2.0)});
          } else {
            const double c = spec.avoid_origin ? sign() * uni(1.5, 2.0) : uni(-0.5, 0.5);
            p.terms.push_back({ProfileTerm::Shape::gauss, c, 0.25 * spec.width, phase(), uni(-2.0, 2.0)});
          }
          break;
        }
      }
      m.modulation[static_cast<std::size_t>(j)] = uni(-0.5, 0.5);
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace airylab
