#include <filesystem>
#include <fstream>
#include <sstream>

#include "airylab/experiment.hpp"
#include "doctest.h"

using namespace airylab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("airylab_test_" + name);
}

}  // namespace

TEST_CASE("config round trip is lossless") {
  json j = json::parse(R"({"experiment": "probe", "seed": 7,
    "probe": {"estimates": [{"id": "cor_b2_204", "beta": -0.4, "family": {"count": 9}}, {"id": "fs20", "r": 1.2}]},
    "solver": {"delta": 0.02}, "lifespan": {"lambdas": [1, 3]}})");
  const ExperimentConfig a = config_from_json(j);
  const json e = config_to_json(a);
  const ExperimentConfig b = config_from_json(e);
  CHECK(config_to_json(b) == e);
  CHECK(a.probe.estimates.size() == 2);
  CHECK(a.probe.estimates[0].spec.beta == -0.4);
  CHECK(a.probe.estimates[0].family.count == 9);
  CHECK(e["probe"]["estimates"][0]["rho"] == json(4.0 / 3.0));
  CHECK(e["probe"]["estimates"][1]["rho"] == "inf");
}

TEST_CASE("unknown keys and values are rejected") {
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"experiment": "probe", "sed": 1})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"experiment": "solve", "solver": {"dt": 1}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"experiment": "plot"})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"experiment": "probe", "probe": {"estimates": [{"id": "x"}]}})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(json::parse(R"({"experiment": "solve", "grid": {"n": "big"}})")), ConfigError);
}

TEST_CASE("overrides follow dotted paths") {
  json j = json::parse(R"({"experiment": "solve"})");
  apply_override(j, "solver.delta=0.01");
  apply_override(j, "data.kind=soliton");
  apply_override(j, "resonant.xi=[8,16]");
  const ExperimentConfig c = config_from_json(j);
  CHECK(c.solver.delta == 0.01);
  CHECK(c.data.kind == "soliton");
  CHECK(c.resonant.xi == std::vector<double>{8, 16});
  CHECK_THROWS_AS(apply_override(j, "novalue"), ConfigError);
  CHECK_THROWS_AS(apply_override(j, "solver.delta.x=1"), ConfigError);
}

TEST_CASE("CSV quoting and number formatting") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(kInf) == "inf");
}

TEST_CASE("catalog lists every experiment in order") {
  const auto c = catalog();
  CHECK(c.size() == 16);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].id < c[i].id);
  for (const auto& e : c) {
    CHECK_FALSE(e.anchor.empty());
    CHECK_FALSE(e.defaults.empty());
  }
  for (EstimateId id : all_estimates()) {
    const bool found = std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.id == estimate_name(id); });
    CHECK(found);
  }
  for (const auto& k : experiment_kinds())
    if (k != "probe") CHECK(std::any_of(c.begin(), c.end(), [&](const CatalogEntry& e) { return e.id == k; }));
}

TEST_CASE("zero-data solve: one converged row, exit 0") {
  ExperimentConfig cfg = config_from_json(json::parse(R"({"experiment": "solve", "data": {"kind": "zero"}})"));
  cfg.output = scratch("zero").string();
  CHECK(run_to_directory(cfg, nullptr) == exit_ok);
  const std::string csv = slurp(std::filesystem::path(cfg.output) / "solve.csv");
  std::istringstream in(csv);
  std::string header, row, extra;
  std::getline(in, header);
  std::getline(in, row);
  CHECK_FALSE(std::getline(in, extra));
  CHECK(header.rfind("data,sign,delta", 0) == 0);
  CHECK(row.find(",1,converged,") != std::string::npos);
}

TEST_CASE("probe CSV has the fixed header") {
  ExperimentConfig cfg = config_from_json(json::parse(R"({"experiment": "probe",
    "probe": {"estimates": [{"id": "lemma1", "family": {"count": 3}}]}})"));
  const Report r = run_experiment(cfg);
  CHECK(r.header == std::vector<std::string>{"estimate_id", "r", "s", "b", "grid_n", "max_ratio", "growth", "verdict"});
  CHECK(r.rows.size() == 3);
  CHECK(r.detail["estimates"][0]["refinements"][0]["samples"].size() == 3);
}

TEST_CASE("exit codes") {
  ExperimentConfig cfg = config_from_json(json::parse(R"({"experiment": "probe",
    "probe": {"estimates": [{"id": "fs20", "r": 1.0}]}})"));
  cfg.output = scratch("gate").string();
  std::string msg;
  CHECK(run_to_directory(cfg, &msg) == exit_hypothesis);
  CHECK_FALSE(msg.empty());
  ExperimentConfig bad = config_from_json(json::parse(R"({"experiment": "solve", "solver": {"delta": -1}})"));
  bad.output = scratch("bad").string();
  CHECK(run_to_directory(bad, &msg) == exit_hypothesis);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("norm-suite passes and is byte-identical across runs") {
  ExperimentConfig cfg = config_from_json(json::parse(R"({"experiment": "norm-suite", "seed": 4})"));
  const Report a = run_experiment(cfg), b = run_experiment(cfg);
  CHECK(a.all_pass);
  CHECK(a.csv() == b.csv());
}
