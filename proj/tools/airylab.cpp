#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "airylab/experiment.hpp"

using namespace airylab;

int main(int argc, char** argv) {
  CLI::App app{"airylab: spectral lab for mKdV in Fourier-Lebesgue spaces"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the experiment described by a JSON config");
  std::string path, out;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  std::size_t grid_n = 0;
  run->add_option("config", path, "config file")->required();
  auto* seed_opt = run->add_option("--seed", seed, "override the seed");
  auto* out_opt = run->add_option("--out", out, "output directory");
  auto* grid_opt = run->add_option("--grid-n", grid_n, "override grid.n");
  run->add_option("--override", overrides, "dotted.key=value, value parsed as JSON when possible");

  app.add_subcommand("list", "print the experiment catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_parse;
  }

  if (app.got_subcommand("list")) {
    std::cout << catalog_text();
    return exit_ok;
  }

  ExperimentConfig cfg;
  try {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
    for (const auto& o : overrides) apply_override(j, o);
    if (*seed_opt) j["seed"] = seed;
    if (*out_opt) j["output"] = out;
    if (*grid_opt) j["grid"]["n"] = grid_n;
    cfg = config_from_json(j);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_parse;
  }

  std::string message;
  const int code = run_to_directory(cfg, &message);
  std::cerr << cfg.experiment << ": " << message << " (exit " << code << ")\n";
  return code;
}
