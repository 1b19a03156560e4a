#pragma once

// Configuration-driven experiment runner. A JSON config names one of
// norm-suite, probe, exponents, resonant-integral, solve, lifespan; the run
// produces a CSV (fixed columns per experiment) and a JSON report.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "airylab/families.hpp"
#include "airylab/mkdv.hpp"
#include "airylab/probe.hpp"

namespace airylab {

using json = nlohmann::json;

enum ExitCode : int { exit_ok = 0, exit_numerical = 1, exit_parse = 2, exit_hypothesis = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  std::size_t n = 128;
  double length = 40.0;
};

// Initial data for solve, lifespan and norm-suite.
struct DataConfig {
  std::string kind = "gaussian";  // gaussian, soliton, zero
  double amplitude = 1.0;
  double width = 1.0;   // gaussian: exp(-(x - center)^2 / (2 width^2))
  double center = 0.0;
  double norm = 0.0;    // > 0: rescale to this FL^r_s norm
  double speed = 1.0;   // soliton c
};

struct ProbeEntry {
  EstimateSpec spec;
  FamilySpec family;
};

struct ProbeConfig {
  std::vector<ProbeEntry> estimates;
  std::vector<std::pair<std::size_t, double>> refinements;  // (n, L)
  ProbeOptions options;
};

struct ResonantConfig {
  std::vector<double> xi{8.0, 16.0, 32.0, 64.0};
  double eps = 0.1;
  int scan_points = 33;
  double rel_tol = 1e-6;
  double slope_max = -0.8;
  std::size_t sigma_samples = 100000;
};

struct LifespanConfig {
  std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  double resolution = 0.05;
  double slope_tolerance = 0.3;  // accepted: |slope - predicted| <= this * |predicted|
};

struct ExponentsConfig {
  std::vector<double> r{1.2, 1.5, 2.0};
};

struct NormSuiteConfig {
  std::size_t samples = 20;
};

struct ExperimentConfig {
  std::string experiment = "probe";
  std::uint64_t seed = 1;
  std::string output = "out";
  GridConfig grid;
  DataConfig data;
  SolverConfig solver;
  double t_final = 0.0;  // solve: 0 means one step of length delta
  bool mirrored = false; // solve: also run the opposite sign
  ProbeConfig probe;
  ResonantConfig resonant;
  LifespanConfig lifespan;
  ExponentsConfig exponents;
  NormSuiteConfig norm_suite;
};

const std::vector<std::string>& experiment_kinds();

// Throws ConfigError on unknown keys, wrong types or unknown names.
ExperimentConfig config_from_json(const json& j);
json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::string& path);

// key = dotted path, value parsed as JSON when possible, else taken as a string.
void apply_override(json& j, const std::string& assignment);

struct Report {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  json detail;
  bool all_pass = true;
  int exit_code = exit_ok;
  std::string csv() const;
};

// Runs the experiment in memory. Throws HypothesisError / ConfigError.
Report run_experiment(const ExperimentConfig& cfg);

// Runs and writes <output>/<experiment>.csv and .json; returns the exit code.
int run_to_directory(const ExperimentConfig& cfg, std::string* message = nullptr);

struct CatalogEntry {
  std::string id;
  std::string anchor;
  std::string defaults;
};
std::vector<CatalogEntry> catalog();
std::string catalog_text();

SpectralField make_data(const DataConfig& d, const Grid& g, double r, double s);

std::string csv_escape(const std::string& field);
std::string format_number(double v);

}  // namespace airylab
