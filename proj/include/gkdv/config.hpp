#pragma once

// Experiment configuration: an INI-style file with one section per concern.
//
//   [grid]       modes, length
//   [datum]      family, amplitude, width, center, wavenumber, speed, path
//   [solver]     dt, horizon, stride, nonlinear, dealias
//   [analytics]  sigmas, s, b, b_prime, band_lo, band_hi, floor
//   [scheduler]  c0, r, C, sigma0, horizon, a0
//   [sweep]      delta, sigmas
//   [symbol]     samples, xi_max, sigma_max, thetas, grid_range
//   [output]     checkpoint_times
//   [run]        seed
//
// Every key is optional; unknown sections or keys are errors.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gkdv/datum.hpp"
#include "gkdv/gevrey.hpp"
#include "gkdv/schedule.hpp"
#include "gkdv/solver.hpp"
#include "gkdv/symbol_bound.hpp"

namespace gkdv {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AnalyticsConfig {
  std::vector<double> sigmas{0.0, 0.25, 0.5};
  double s = 0.0;
  double b = 0.6;
  double b_prime = -0.4;
  RadiusFitOptions fit{};
};

struct ScheduleConfig {
  SchedulerConstants constants{};
  double sigma0 = 1.0;
  double horizon = 10.0;
  std::optional<double> a0;  ///< overrides the datum's measured A_{sigma0}(0)
};

struct ExperimentConfig {
  std::size_t modes = 1024;
  double length = 40.0 * kPi;
  DatumSpec datum{};
  SolverConfig solver{};
  AnalyticsConfig analytics{};
  ScheduleConfig schedule{};
  std::optional<double> sweep_delta;
  std::optional<std::vector<double>> sweep_sigmas;
  SampleSpec symbol{};
  int symbol_grid_range = 5;
  std::vector<double> checkpoint_times;

  Grid grid() const { return Grid(modes, length); }

  /// Configured sweep sigmas, or sigma0 * 2^-8 .. sigma0 * 2^-1.
  std::vector<double> sweep_sigma_list() const;

  /// Checks every module's preconditions; throws ConfigError naming the field.
  void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gkdv
