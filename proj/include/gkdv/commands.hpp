#pragma once

// Subcommands behind the gkdv-lab executable. Each writes its artifacts into
// `options.out` and a one-line summary to `log`, and returns a process exit code.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "gkdv/config.hpp"

namespace gkdv {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitFailure = 1,
  kExitConfigError = 2,
  kExitNumericalAbort = 3,
  kExitCheckFailed = 4,
};

struct CommandOptions {
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  bool verify = false;
};

/// trajectory.csv (t, l2, mass, hamiltonian, A_sigma=..., sigma_hat, decay_class)
/// plus checkpoint_<i>.gkdv at the configured times.
int cmd_simulate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// radius.json for the configured datum.
int cmd_radius(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// sweep.csv (sigma, delta_e, bound, ratio, flag) and sweep.json with the fit.
int cmd_sweep_sigma(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// fuzz.json; with verify, exit 4 on any violation.
int cmd_fuzz_symbol(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// plan.json; with verify also induction.csv, radius_trace.csv and verify.json,
/// exiting 4 if an induction step fails or the fitted radius dips below the plan.
int cmd_schedule(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// probe.json: multilinear ratio for each configured sigma.
int cmd_probe_multilinear(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// Dispatches by name and maps exceptions onto exit codes.
int run_command(std::string_view name, const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& log, std::ostream& err);

}  // namespace gkdv
