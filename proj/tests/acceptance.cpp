// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "airylab/airy_products.hpp"
#include "airylab/experiment.hpp"
#include "airylab/multilinear.hpp"
#include "helpers.hpp"

using namespace airylab;
using namespace testutil;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt <= budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  std::printf("criterion %2d [PRIMARY] %s: %s (%s; %.1f s of %.0f s)\n", id, ok ? "PASS" : "FAIL", title,
              o.detail.c_str(), dt, budget_s);
  std::fflush(stdout);
}

std::string num(double v) { return format_number(v); }

ExperimentConfig config(const char* text) { return config_from_json(json::parse(text)); }

cd paired_windowed(const std::vector<SpectralField>& data, const SpaceTimeGrid& st, std::size_t row, double tau0,
                   double width) {
  SpaceTimeField prod = to_physical(airy_flow(data[0], st));
  for (std::size_t k = 1; k < data.size(); ++k) {
    const SpaceTimeField p = to_physical(airy_flow(data[k], st));
    for (std::size_t i = 0; i < prod.values.size(); ++i) prod.values[i] *= p.values[i];
  }
  const SpaceTimeField F = spacetime_transform(prod);
  cd acc = 0.0;
  for (std::size_t m = 0; m < st.n_t(); ++m) {
    const double z = (st.tau(m) - tau0) / width;
    acc += F(row, m) * std::exp(-0.5 * z * z) * st.dtau() / kTwoPi;
  }
  return acc;
}

Outcome exact_algebra() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const double f = resonance_factored(a, b, c);
    const double scale = std::max(std::abs(f), 1e-6 * std::pow(std::abs(a) + std::abs(b) + std::abs(c), 3));
    worst = std::max(worst, std::abs(resonance_function(a, b, c) - f) / scale);
  }
  return {worst <= 1e-10, "max rel err " + num(worst) + " over 1e4 triples"};
}

Outcome unitarity() {
  const ExperimentConfig c = config(R"({"experiment": "norm-suite", "norm_suite": {"samples": 20}})");
  const Report r = run_experiment(c);
  for (const auto& row : r.rows)
    if (row[0] == "unitarity_rel") return {row.back() == "PASS", "max rel change " + row[1] + " over 20 (r, s, t)"};
  return {false, "no unitarity row"};
}

Outcome oracles() {
  std::mt19937_64 rng(2);
  double worst = 0.0, adj = 0.0;
  auto rel = [](const std::vector<cd>& a, const std::vector<cd>& b) {
    return max_abs_diff(a, b) / std::max(1.0, max_abs(b));
  };
  for (std::size_t n : {32, 64}) {
    const Grid g(n, 9.0);
    const long N = static_cast<long>(n);
    const double cell = g.dxi() / kTwoPi;
    const auto f = random_field(g, rng), h = random_field(g, rng), k = random_field(g, rng);
    for (double s : {0.0, 0.5, -0.3}) {
      std::vector<cd> m(n), p(n);
      for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
          const long idx = g.index_of_mode(g.mode(a) + g.mode(b));
          if (idx < 0) continue;
          const cd prod = f.values[a] * h.values[b] * cell;
          m[idx] += BilinearWeight{BilinearKind::minus, s}(g.xi(a), g.xi(b)) * prod;
          p[idx] += BilinearWeight{BilinearKind::plus, s}(g.xi(a), g.xi(b)) * prod;
        }
      worst = std::max({worst, rel(i_minus(f, h, s).values, m), rel(i_plus(f, h, s).values, p)});
      adj = std::max(adj, adjoint_defect(f, h, k, s));
    }
    for (auto mask : {TrilinearMask::T, TrilinearMask::T_ge, TrilinearMask::T_le, TrilinearMask::unmasked}) {
      std::vector<cd> t(n);
      for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b)
          for (long d = 0; d < N; ++d) {
            const long idx = g.index_of_mode(g.mode(a) + g.mode(b) + g.mode(d));
            if (idx < 0 || !mask_contains(mask, g.xi(a), g.xi(b), g.xi(d))) continue;
            t[idx] += f.values[a] * h.values[b] * k.values[d] * cell * cell;
          }
      worst = std::max(worst, rel(trilinear_apply(f, h, k, mask).values, t));
    }
  }
  return {worst <= 1e-12 && adj < 1e-10, "max oracle err " + num(worst) + ", adjoint defect " + num(adj)};
}

Outcome delta_resolution() {
  const Grid g(64, 40.0);
  const double T = 40.0;
  const SpaceTimeGrid st(g, SpaceTimeGrid::min_time_samples(g, T), T);
  double worst = 0.0;
  {
    const auto u0 = freq_gauss(g, 1.5, 0.5), v0 = freq_gauss(g, 0.8, 0.5, cd(0.5, 0.5), 1.0);
    for (long mode : {12, 15}) {
      const std::size_t row = static_cast<std::size_t>(g.index_of_mode(mode));
      const double xi = g.xi(row), tau0 = std::pow(xi, 3) / 4.0 + 2.0, width = 2.0;
      const cd w = paired_windowed({u0, v0}, st, row, tau0, width);
      cd r = 0.0;
      const double dy = 1e-3;
      for (double y = 0.5 * dy; y < 6.0; y += dy) {
        const double tau = pair_tau(xi, y), z = (tau - tau0) / width;
        r += pair_spectrum(u0, v0, xi, tau, 1e-12).value * pair_jacobian(xi, y) * std::exp(-0.5 * z * z) * dy / kTwoPi;
      }
      worst = std::max(worst, std::abs(r - w) / std::abs(w));
    }
  }
  {
    const auto u0 = freq_gauss(g, 1.0, 0.5), v0 = freq_gauss(g, 0.6, 0.5), w0 = freq_gauss(g, -0.4, 0.5, cd(0.0, 1.0));
    const std::size_t row = static_cast<std::size_t>(g.index_of_mode(8));
    const double xi = g.xi(row), width = 2.0;
    for (double tau0 : {0.0, 1.5, 4.0}) {
      const cd w = paired_windowed({u0, v0, w0}, st, row, tau0, width);
      cd r = 0.0;
      const double dt = 0.02;
      for (double tau = tau0 - 6.0 * width; tau <= tau0 + 6.0 * width; tau += dt) {
        const double z = (tau - tau0) / width;
        r += triple_spectrum(u0, v0, w0, xi, tau).value * std::exp(-0.5 * z * z) * dt / kTwoPi;
      }
      worst = std::max(worst, std::abs(r - w) / std::abs(w));
    }
  }
  return {worst <= 0.05, "max rel deviation " + num(worst) + " (pair and triple, Gaussian data)"};
}

Outcome plancherel() {
  const Report r = run_experiment(config(R"({"experiment": "norm-suite"})"));
  std::string d;
  bool ok = true, seen_s = false, seen_g = false;
  for (const auto& row : r.rows) {
    if (row[0] == "sobolev_h1_closed_form" || row[0] == "plancherel_l2" || row[0] == "gaussian_closed_form") {
      ok = ok && row.back() == "PASS";
      d += row[0] + " err " + row[3] + "; ";
      seen_s = seen_s || row[0] == "sobolev_h1_closed_form";
      seen_g = seen_g || row[0] == "gaussian_closed_form";
    }
  }
  return {ok && seen_s && seen_g, d};
}

Outcome exponent_checks() {
  const Report r = run_experiment(config(R"({"experiment": "exponents", "exponents": {"r": [1.2, 1.5, 2]}})"));
  std::size_t identities = 0;
  for (const auto& row : r.rows)
    if (row[0] == "t2c_identity") ++identities;
  return {r.all_pass && identities == 3, std::to_string(r.rows.size()) + " exponent rows, all " +
                                             (r.all_pass ? "PASS" : "not PASS")};
}

Outcome probes() {
  const ExperimentConfig main = config(R"({"experiment": "probe", "probe": {"estimates": [
      {"id": "lemma1"}, {"id": "lemma1", "p": 4, "q": 1.3333333333333333, "r1": 2, "r2": 2},
      {"id": "cor_b1"}, {"id": "cor_b2_204"}, {"id": "lemma2"}, {"id": "cor_t1c"}, {"id": "lemma3"},
      {"id": "cor_t2c"}, {"id": "lemma4"}, {"id": "cor_t3c"}, {"id": "theorem2"}]}})");
  const Report a = run_experiment(main);
  bool enough = true;
  double worst = 0.0;
  for (const auto& e : a.detail["estimates"]) {
    enough = enough && e["family"]["count"].get<std::size_t>() >= 50;
    for (const auto& g : e["growth"]) worst = std::max(worst, g.get<double>());
  }
  const ExperimentConfig below = config(R"({"experiment": "probe", "probe": {"estimates": [{"id": "fs20", "r": 1.2}]}})");
  const Report b = run_experiment(below);
  const auto& fs = b.detail["estimates"][0];
  const double total = fs["total_growth"].get<double>();
  std::ostringstream os;
  os << "11 probes " << (a.all_pass ? "PASS" : "not all PASS") << ", max growth " << num(worst)
     << "; fs20 at r = 1.2 total growth " << num(total) << " (verdict " << fs["verdict"].get<std::string>()
     << ", needs >= 1.5)";
  return {a.all_pass && enough && total >= 1.5, os.str()};
}

Outcome resonant() {
  const Report r = run_experiment(config(R"({"experiment": "resonant-integral",
      "resonant": {"xi": [8, 16, 32, 64], "eps": 0.1, "sigma_samples": 20000}})"));
  return {r.all_pass, "fitted slope " + num(r.detail["slope"].get<double>()) + " (needs <= -0.8)"};
}

Outcome solver() {
  auto row_of = [](const char* text) {
    const Report r = run_experiment(config(text));
    return std::make_pair(r.all_pass, r.rows);
  };
  const auto zero = row_of(R"({"experiment": "solve", "data": {"kind": "zero"}})");
  const auto small = row_of(R"({"experiment": "solve", "data": {"kind": "gaussian", "norm": 0.1}, "mirrored": true})");
  const auto sol = row_of(R"({"experiment": "solve", "data": {"kind": "soliton", "speed": 1},
      "grid": {"n": 256, "length": 40}, "t_final": 0.1})");
  // columns: ... 6 iterations, 7 verdict, 8 residual, 11 mass_drift, 13 reference_error
  const bool z = zero.first && zero.second.size() == 1 && zero.second[0][6] == "1";
  bool g = small.first && small.second.size() == 2;
  double res = 0.0, mass = 0.0;
  for (const auto& row : small.second) {
    res = std::max(res, std::stod(row[8]));
    mass = std::max(mass, std::stod(row[11]));
  }
  for (const auto& row : sol.second) mass = std::max(mass, std::stod(row[11]));
  g = g && res < 1e-6;
  const double err = sol.second.empty() ? kInf : std::stod(sol.second[0][13]);
  std::ostringstream os;
  os << "zero " << (z ? "1 iteration" : "not trivial") << ", Gaussian residual " << num(res) << " (both signs "
     << (small.first ? "converged" : "not converged") << "), soliton L2 error " << num(err) << ", mass drift "
     << num(mass);
  return {z && g && sol.first && err < 1e-3 && mass < 1e-8, os.str()};
}

Outcome lifespan() {
  const Report r = run_experiment(config(R"({"experiment": "lifespan", "grid": {"n": 64, "length": 20},
      "solver": {"r": 2, "s": 0.25, "b": 0.6, "tol": 1e-8, "delta": 0.1},
      "lifespan": {"lambdas": [1, 2, 4, 8, 16, 32]}})"));
  const double slope = r.detail["slope"].get<double>();
  return {slope >= -5.2 && slope <= -2.8 && r.detail["monotone"].get<bool>(),
          "fitted slope " + num(slope) + " against -4"};
}

Outcome determinism() {
  const char* configs[] = {
      R"({"experiment": "norm-suite", "seed": 3})",
      R"({"experiment": "exponents", "seed": 3})",
      R"({"experiment": "resonant-integral", "seed": 3, "resonant": {"xi": [8, 16], "sigma_samples": 5000}})",
      R"({"experiment": "probe", "seed": 3, "probe": {"estimates": [{"id": "cor_b2_204", "family": {"count": 5}},
          {"id": "lemma4", "family": {"count": 2}}]}})",
      R"({"experiment": "solve", "seed": 3, "data": {"kind": "gaussian", "norm": 0.1}, "mirrored": true})",
      R"({"experiment": "lifespan", "seed": 3, "grid": {"n": 32, "length": 20},
          "solver": {"tol": 1e-8, "delta": 0.1}, "lifespan": {"lambdas": [1, 2]}})"};
  std::size_t same = 0, total = 0;
  for (const char* c : configs) {
    const ExperimentConfig cfg = config(c);
    ++total;
    if (run_experiment(cfg).csv() == run_experiment(cfg).csv()) ++same;
  }
  return {same == total, std::to_string(same) + "/" + std::to_string(total) + " experiments byte-identical"};
}

}  // namespace

int main() {
  criterion(1, "resonance identity", 1.0, exact_algebra);
  criterion(2, "Airy unitarity on FL spaces", 1.0, unitarity);
  criterion(3, "oracle equivalence of bilinear and trilinear operators", 30.0, oracles);
  criterion(4, "delta resolution against windowed transforms", 120.0, delta_resolution);
  criterion(5, "Plancherel bridge and Gaussian closed form", 1.0, plancherel);
  criterion(6, "exponent checks", 1.0, exponent_checks);
  criterion(7, "estimate probes", 1800.0, probes);
  criterion(8, "resonant integral decay", 300.0, resonant);
  criterion(9, "solver", 600.0, solver);
  criterion(10, "lifespan scaling", 1800.0, lifespan);
  criterion(11, "determinism", 600.0, determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
