#include "gkdv/almost_conservation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "gkdv/gevrey.hpp"
#include "stats.hpp"

namespace gkdv {

SpectralField commutator_f(const SpectralField& u, double sigma) {
  const SpectralField v = exp_multiplier(u, sigma);
  SpectralField bracket = nonlinear_power4(v);
  bracket -= exp_multiplier(nonlinear_power4(u), sigma);
  return derivative(bracket, 1);
}

EnergyIncrement delta_energy(const Trajectory& trajectory, double sigma) {
  if (trajectory.empty()) throw std::invalid_argument("delta_energy: empty trajectory");
  const auto a = measure_a(trajectory, sigma);
  EnergyIncrement out;
  out.initial = a.front().value * a.front().value;
  double best = out.initial;
  for (const auto& [t, value] : a) {
    if (value * value > best) {
      best = value * value;
      out.t_argmax = t;
    }
  }
  out.delta = best - out.initial;
  return out;
}

void require_dyadic(const std::vector<double>& sigmas) {
  if (sigmas.empty()) throw std::invalid_argument("sigma sweep: empty sigma list");
  for (double s : sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument(fmt::format("sigma sweep: sigma must be positive, got {}", s));
    const double exponent = std::log2(s / sigmas.front());
    if (std::abs(exponent - std::round(exponent)) > 1e-9) {
      throw std::invalid_argument(fmt::format("sigma sweep: {} is not a dyadic multiple of {}", s, sigmas.front()));
    }
  }
}

std::vector<SigmaSweepRow> measure_sweep_rows(const Trajectory& trajectory, const std::vector<double>& sigmas) {
  require_dyadic(sigmas);
  const SpectralField& u0 = trajectory.front();
  std::vector<SigmaSweepRow> rows;
  for (double sigma : sigmas) {
    SigmaSweepRow row;
    row.sigma = sigma;
    const auto increment = delta_energy(trajectory, sigma);
    row.delta_e = increment.delta;
    row.bound = std::sqrt(sigma) * std::pow(gevrey_norm(u0, {sigma, 0.0}), 5);
    row.ratio = row.bound > 0.0 ? row.delta_e / row.bound : 0.0;
    row.below_floor = row.delta_e <= kMeasurementFloor * increment.initial;
    rows.push_back(row);
  }
  return rows;
}

SigmaSweep fit_sweep(std::vector<SigmaSweepRow> rows) {
  SigmaSweep sweep;
  sweep.rows = std::move(rows);
  std::vector<double> log_sigma;
  std::vector<double> log_delta;
  for (const auto& row : sweep.rows) {
    if (row.below_floor) continue;
    log_sigma.push_back(std::log(row.sigma));
    log_delta.push_back(std::log(row.delta_e));
    sweep.ratio_max = log_sigma.size() == 1 ? row.ratio : std::max(sweep.ratio_max, row.ratio);
    sweep.ratio_min = log_sigma.size() == 1 ? row.ratio : std::min(sweep.ratio_min, row.ratio);
  }
  sweep.fitted_rows = log_sigma.size();
  if (sweep.fitted_rows < 2) throw std::runtime_error("insufficient signal: fewer than two rows above the measurement floor");
  sweep.exponent = least_squares_slope(log_sigma, log_delta);
  return sweep;
}

SigmaSweep sigma_sweep(const Trajectory& trajectory, const std::vector<double>& sigmas) {
  return fit_sweep(measure_sweep_rows(trajectory, sigmas));
}

SigmaSweep sigma_sweep(const SpectralField& u0, double delta, const std::vector<double>& sigmas,
                       const SolverConfig& solver) {
  require_dyadic(sigmas);
  for (double sigma : sigmas) (void)exp_multiplier(u0, sigma);  // overflow guard before the run
  SolverConfig config = solver;
  config.horizon = delta;
  return sigma_sweep(evolve(u0, config), sigmas);
}

double simpson(const std::vector<double>& values, double spacing) {
  const std::size_t n = values.size();
  if (n < 3) throw std::invalid_argument("simpson: need at least three samples");
  double total = 0.0;
  std::size_t end = n - 1;  // index of the last sample covered by the 1/3 rule
  if ((n - 1) % 2 != 0) {
    // Odd number of intervals: close with a 3/8 panel over the last three.
    end = n - 4;
    total += 3.0 * spacing / 8.0 * (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
  }
  for (std::size_t i = 0; i + 2 <= end; i += 2) {
    total += spacing / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
  }
  return total;
}

EnergyIdentityResidual energy_identity_residual(const Trajectory& trajectory, double sigma) {
  if (trajectory.size() < 4) throw std::invalid_argument("energy identity: need at least four samples");
  std::vector<double> rate;
  rate.reserve(trajectory.size());
  for (const auto& u : trajectory.snapshots()) {
    if (!trajectory.nonlinear()) {
      rate.push_back(0.0);
      continue;
    }
    rate.push_back(2.0 * inner_product(exp_multiplier(u, sigma), commutator_f(u, sigma)));
  }
  EnergyIdentityResidual out;
  const double first = gevrey_norm(trajectory.front(), {sigma, 0.0});
  const double last = gevrey_norm(trajectory.back(), {sigma, 0.0});
  out.lhs = last * last - first * first;
  out.rhs = simpson(rate, trajectory.sample_interval());
  const double scale = first * first;
  out.residual = scale > 0.0 ? std::abs(out.lhs - out.rhs) / scale : std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace gkdv
