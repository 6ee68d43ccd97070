// gkdv-lab: command-line front end for the quartic gKdV experiments.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gkdv/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quartic gKdV analyticity laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  gkdv::CommandOptions options;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::string out = ".";

  const char* names[][2] = {
      {"simulate", "Evolve the datum; write trajectory.csv and checkpoints"},
      {"radius", "Fit the radius of analyticity of the datum"},
      {"sweep-sigma", "Gevrey energy increment over one local step for each sigma"},
      {"fuzz-symbol", "Randomized and exhaustive check of the symbol inequality"},
      {"schedule", "Continuation plan; --verify runs and checks it"},
      {"probe-multilinear", "Space-time multilinear ratio for each sigma"},
  };
  for (const auto& [name, help] : names) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Experiment config file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory");
    sub->add_option("--seed", seed, "Random seed");
    sub->add_option("--samples", samples, "Sample count");
    sub->add_flag("--verify", options.verify, "Run acceptance checks; exit 4 on failure");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gkdv::kExitConfigError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  options.out = out;
  if (chosen->count("--seed") > 0) options.seed = seed;
  if (chosen->count("--samples") > 0) options.samples = samples;

  gkdv::ExperimentConfig config;
  try {
    config = config_path.empty() ? gkdv::ExperimentConfig{} : gkdv::load_config(config_path);
    if (config_path.empty()) config.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return gkdv::kExitConfigError;
  }
  return gkdv::run_command(chosen->get_name(), config, options, std::cout, std::cerr);
}
