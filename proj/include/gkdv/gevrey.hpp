#pragma once

// Gevrey norms and the radius of spatial analyticity read off from the
// exponential decay of Fourier coefficients.

#include <optional>
#include <string_view>
#include <vector>

#include "gkdv/solver.hpp"
#include "gkdv/spectral_core.hpp"

namespace gkdv {

struct GevreyParams {
  double sigma = 0.0;  ///< strip half-width
  double s = 0.0;      ///< Sobolev index
};

/// sqrt(L sum_k e^{2 sigma |k|} <k>^{2s} |c_k|^2), <k> = sqrt(1 + k^2).
/// With sigma = s = 0 this is the L^2 norm.
double gevrey_norm(const SpectralField& u, GevreyParams params);

struct TimedValue {
  double t = 0.0;
  double value = 0.0;
};

/// A_sigma(t) = ||u(t)||_{G^sigma} for every snapshot.
std::vector<TimedValue> measure_a(const Trajectory& trajectory, double sigma);

enum class DecayClass { exponential, super_exponential, at_noise_floor };

std::string_view to_string(DecayClass c);

struct RadiusFitOptions {
  std::optional<double> k_lo;  ///< default k_max / 8
  std::optional<double> k_hi;  ///< default 3 k_max / 4
  double floor_relative = 1e-13;
  std::size_t min_modes = 8;
  /// Height of the fitted parabola above its chord at the band midpoint, in
  /// log units, beyond which the decay counts as faster than exponential.
  double concavity_tolerance = 0.5;
};

struct RadiusEstimate {
  double sigma_hat = 0.0;
  double k_lo = 0.0;
  double k_hi = 0.0;
  double residual = 0.0;  ///< RMS of the straight-line fit in log|c_k|
  std::size_t modes_used = 0;
  DecayClass classification = DecayClass::at_noise_floor;
};

/// Least-squares fit of log|c_k| = a - sigma_hat |k| over modes in the band
/// whose magnitude exceeds floor_relative * max|c_k|.
/// Throws std::invalid_argument("insufficient band") if the band holds fewer
/// than min_modes grid modes; returns at_noise_floor if fewer than min_modes
/// survive the floor.
RadiusEstimate estimate_radius(const SpectralField& u, const RadiusFitOptions& options = {});

}  // namespace gkdv
