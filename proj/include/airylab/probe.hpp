#pragma once

// Estimate probes: evaluate both sides of each bi-/trilinear inequality on
// every member of a test family at a sequence of refinements, and track the
// growth of the largest ratio.

#include <stdexcept>
#include <string>
#include <vector>

#include "airylab/airy_products.hpp"
#include "airylab/families.hpp"
#include "airylab/norms.hpp"
#include "airylab/spectral_core.hpp"

namespace airylab {

enum class EstimateId {
  lemma1,
  cor_b1,
  cor_b2_204,
  fs20,
  lemma2,
  cor_t1c,
  lemma3,
  cor_t2c,
  lemma4,
  cor_t3c,
  theorem2
};

const char* estimate_name(EstimateId id);
EstimateId estimate_from_name(const std::string& name);
const std::vector<EstimateId>& all_estimates();

// Exponent bundle; each estimate reads the fields it needs.
//   lemma1, cor_b1: p, q, r1, r2 (+ b for cor_b1)
//   cor_b2_204:     r, rho (rho' enters), beta
//   fs20:           r
//   lemma2, cor_t1c: r, s1, s2 (+ b)
//   lemma3:         p, p0, p1
//   cor_t2c:        r, s0, s1, b
//   lemma4, cor_t3c: r, rho (+ beta, b)
//   theorem2:       r, s, b, b2 (= b')
struct EstimateSpec {
  EstimateId id = EstimateId::lemma1;
  double r = 2.0, s = 0.0, b = 0.6, b2 = -0.1;
  double p = 2.0, q = 2.0, r1 = 2.0, r2 = 2.0;
  double rho = kInf, beta = 0.0;
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  double p0 = 0.0, p1 = 0.0;
  double eps = 0.05;  // stands in for "0+"
  RegionConstants region{2.0, 3.0};
};

EstimateSpec default_spec(EstimateId id);
FamilySpec default_family(EstimateId id);

class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(const std::string& what, std::vector<std::string> v)
      : std::invalid_argument(what), violations(std::move(v)) {}
  std::vector<std::string> violations;
};

std::vector<std::string> hypothesis_violations(const EstimateSpec& spec);
void validate(const EstimateSpec& spec);  // throws HypothesisError

struct ProbeOptions {
  double density_bin = 0.5;            // pure Airy triple products: tau bin of the resolved density
  double envelope_tau_width = 96.0;    // enveloped products: width of the product kernel in tau
  double fs_time_per_length = 1.0 / 150.0;  // fs20 time window T = L * this
  double degenerate_rhs = 1e-14;
  double pass_growth = 1.2;
};

struct SampleRow {
  std::size_t member = 0;
  double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

struct RefinementReport {
  std::string fingerprint;
  std::size_t n = 0;
  double length = 0.0;
  double max_ratio = 0.0;
  std::size_t kept = 0, dropped = 0;
  std::vector<SampleRow> samples;
};

struct EstimateReport {
  EstimateSpec spec;
  FamilySpec family;
  std::vector<RefinementReport> refinements;
  std::vector<double> growth;  // max_ratio[k+1] / max_ratio[k]
  double total_growth = 0.0;   // last / first
  bool pass = false;
  std::string verdict;  // PASS or FAIL
};

struct SideValues {
  double lhs = 0.0, rhs = 0.0;
};

SideValues evaluate(const EstimateSpec& spec, const FamilyMember& m, const Grid& g, const ProbeOptions& opt = {});

EstimateReport probe(const EstimateSpec& spec, const FamilySpec& family, const std::vector<Grid>& refinements,
                     const ProbeOptions& opt = {});

// (64, 8 pi), (128, 16 pi), (256, 32 pi): fixed xi_max = 8, dxi halving.
std::vector<Grid> default_refinements();

// Data-side helpers shared with tests.
// || <xi>^s |xi|^sigma u0^ ||_{L^{r'}}, the zero mode dropped when sigma != 0.
double weighted_fl_norm(const SpectralField& u0, double r, double s, double riesz = 0.0);

// Left side of the bilinear Airy estimate by direct quadrature of the resolved delta in y.
double bilinear_airy_mixed_norm(const SpectralField& u0, const SpectralField& v0, double p, double q);

// L^{q}_{xt} norm of the Airy flow of u0 on the box times [0, T].
double airy_spacetime_lebesgue(const SpectralField& u0, double q, double t_window);

}  // namespace airylab
