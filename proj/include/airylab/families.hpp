#pragma once

// Reproducible test-data families for the estimate probes. Each member is a
// set of up to three frequency profiles defined on the continuum, sampled on
// whatever grid a refinement uses, plus time-envelope modulations for the
// restriction-norm probes.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "airylab/spectral_core.hpp"

namespace airylab {

enum class FamilyKind { gaussian, wave_packet, dyadic_bump, random_phase, two_bump_separated };

const char* family_name(FamilyKind k);
FamilyKind family_from_name(const std::string& name);

struct FamilySpec {
  FamilyKind kind = FamilyKind::gaussian;
  double center = 4.0;      // typical |center frequency|
  double width = 1.0;       // typical bump width in xi
  double separation = 5.0;  // high/low split for two_bump_separated
  std::uint64_t seed = 1;
  std::size_t count = 50;
  // Keep support away from xi = 0 (needed when the data norm carries a
  // negative Riesz power).
  bool avoid_origin = false;
};

// One additive term of a profile.
struct ProfileTerm {
  enum class Shape { gauss, bump } shape = Shape::gauss;
  double a = 0.0;  // gauss: center; bump: left end
  double b = 1.0;  // gauss: width;  bump: right end
  cd coef{1.0, 0.0};
  double shift = 0.0;  // physical translation x0: factor exp(-i x0 xi)
};

struct Profile {
  std::vector<ProfileTerm> terms;
  // Smooth cutoff keeping |xi| <= band (1 inside band - 1, 0 beyond band).
  double band = 7.5;
  cd operator()(double xi) const;
  SpectralField sample(const Grid& g) const;
};

struct FamilyMember {
  std::array<Profile, 3> data;
  std::array<double, 3> modulation{};  // sigma_i of the time envelopes, in units of the envelope width in tau
};

std::vector<FamilyMember> generate_family(const FamilySpec& spec);

// Smooth compactly supported bump on (a, b), equal to exp(1 - 1/(1 - s^2))
// in the centered coordinate s in (-1, 1).
double smooth_bump(double xi, double a, double b);

}  // namespace airylab
