#include "gkdv/gevrey.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/format.h>

namespace gkdv {

double gevrey_norm(const SpectralField& u, GevreyParams params) {
  const Grid& grid = u.grid();
  if (!(params.sigma >= 0.0)) throw std::invalid_argument(fmt::format("gevrey: sigma must be >= 0, got {}", params.sigma));
  if (params.sigma * grid.k_max() > kMaxExponent) {
    throw OverflowGuardError(fmt::format(
        "gevrey: sigma = {} overflows on this grid (k_max = {}); largest admissible sigma is {}", params.sigma,
        grid.k_max(), kMaxExponent / grid.k_max()));
  }
  const auto modes = u.modes();
  double sum = 0.0;
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double k = grid.wavenumber(static_cast<std::ptrdiff_t>(m));
    double weight = std::exp(2.0 * params.sigma * k);
    if (params.s != 0.0) weight *= std::pow(1.0 + k * k, params.s);
    sum += mode_multiplicity(grid, m) * weight * std::norm(modes[m]);
  }
  return std::sqrt(grid.length() * sum);
}

std::vector<TimedValue> measure_a(const Trajectory& trajectory, double sigma) {
  std::vector<TimedValue> out;
  out.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out.push_back({trajectory.times()[i], gevrey_norm(trajectory.snapshots()[i], {sigma, 0.0})});
  }
  return out;
}

std::string_view to_string(DecayClass c) {
  switch (c) {
    case DecayClass::exponential: return "exponential";
    case DecayClass::super_exponential: return "super-exponential";
    case DecayClass::at_noise_floor: return "at-noise-floor";
  }
  return "unknown";
}

RadiusEstimate estimate_radius(const SpectralField& u, const RadiusFitOptions& options) {
  const Grid& grid = u.grid();
  RadiusEstimate estimate;
  estimate.k_lo = options.k_lo.value_or(grid.k_max() / 8.0);
  estimate.k_hi = options.k_hi.value_or(0.75 * grid.k_max());
  if (!(estimate.k_lo >= 0.0) || !(estimate.k_hi > estimate.k_lo)) {
    throw std::invalid_argument(fmt::format("radius fit: bad band [{}, {}]", estimate.k_lo, estimate.k_hi));
  }
  estimate.k_hi = std::min(estimate.k_hi, grid.k_max());

  const auto modes = u.modes();
  double peak = 0.0;
  for (const auto& c : modes) peak = std::max(peak, std::abs(c));
  const double floor = options.floor_relative * peak;

  std::size_t in_band = 0;
  std::vector<double> ks;
  std::vector<double> logs;
  for (std::size_t m = 1; m < modes.size(); ++m) {
    const double k = grid.wavenumber(static_cast<std::ptrdiff_t>(m));
    if (k < estimate.k_lo || k > estimate.k_hi) continue;
    ++in_band;
    const double magnitude = std::abs(modes[m]);
    if (magnitude > floor && magnitude > 0.0) {
      ks.push_back(k);
      logs.push_back(std::log(magnitude));
    }
  }
  if (in_band < options.min_modes) {
    throw std::invalid_argument(fmt::format("insufficient band: [{}, {}] holds {} modes, need {}", estimate.k_lo,
                                            estimate.k_hi, in_band, options.min_modes));
  }
  estimate.modes_used = ks.size();
  if (ks.size() < options.min_modes) {
    estimate.classification = DecayClass::at_noise_floor;
    return estimate;
  }

  // Centre and scale k so the normal equations stay well conditioned.
  const auto count = static_cast<Eigen::Index>(ks.size());
  const double k_first = ks.front();
  const double k_last = ks.back();
  const double centre = 0.5 * (k_first + k_last);
  const double half_width = std::max(0.5 * (k_last - k_first), 1e-300);
  Eigen::MatrixXd design(count, 3);
  Eigen::VectorXd rhs(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double z = (ks[static_cast<std::size_t>(i)] - centre) / half_width;
    design(i, 0) = 1.0;
    design(i, 1) = z;
    design(i, 2) = z * z;
    rhs(i) = logs[static_cast<std::size_t>(i)];
  }

  const Eigen::VectorXd line = design.leftCols(2).colPivHouseholderQr().solve(rhs);
  const Eigen::VectorXd residual = rhs - design.leftCols(2) * line;
  estimate.residual = std::sqrt(residual.squaredNorm() / static_cast<double>(count));
  const double slope = line(1) / half_width;
  estimate.sigma_hat = -slope;

  const Eigen::VectorXd parabola = design.colPivHouseholderQr().solve(rhs);
  // For z in [-1, 1] the parabola rises above its chord by -q at z = 0.
  const double bulge = -parabola(2);
  if (bulge > options.concavity_tolerance) {
    estimate.classification = DecayClass::super_exponential;
  } else if (estimate.sigma_hat < 0.0) {
    // Coefficients growing with |k|: the field is not resolved on this band.
    estimate.classification = DecayClass::at_noise_floor;
  } else {
    estimate.classification = DecayClass::exponential;
  }
  return estimate;
}

}  // namespace gkdv
