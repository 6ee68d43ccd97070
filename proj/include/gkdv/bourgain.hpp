#pragma once

// Windowed proxy for the Gevrey-Bourgain norm
//
//   || e^{sigma |D|} u ||_{X^{s,b}} = || e^{sigma|k|} <k>^s <tau - k^3>^b  u~(tau, k) ||_{L^2}
//
// on a finite time segment. The restriction norm is an infimum over all
// extensions of the segment; here one particular extension is used (the
// segment multiplied by a taper and extended by zero), so the value is an
// upper-bound proxy rather than the norm itself.

#include <array>
#include <cstddef>
#include <vector>

#include "gkdv/solver.hpp"
#include "gkdv/spectral_core.hpp"

namespace gkdv {

enum class Taper { raised_cosine, rectangular };

struct TimeWindow {
  Taper taper = Taper::raised_cosine;
  double width = 0.0;         ///< time span covered; 0 means the whole segment
  std::size_t padding = 4;    ///< zero-padding factor applied before the time transform
};

struct BourgainParams {
  double sigma = 0.0;
  double s = 0.0;
  double b = 0.0;
  TimeWindow window{};
};

/// Uniformly sampled segment u(t_0 + n h), n = 0 .. M-1, with M >= 16.
class SpaceTimeField {
 public:
  SpaceTimeField(double time_step, std::vector<SpectralField> samples);

  /// Snapshots of `trajectory` with t_begin <= t <= t_end.
  static SpaceTimeField from_trajectory(const Trajectory& trajectory, double t_begin, double t_end);
  static SpaceTimeField from_trajectory(const Trajectory& trajectory);

  const Grid& grid() const noexcept { return samples_.front().grid(); }
  double time_step() const noexcept { return time_step_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double span() const noexcept { return time_step_ * static_cast<double>(samples_.size() - 1); }
  const std::vector<SpectralField>& samples() const noexcept { return samples_; }

 private:
  double time_step_;
  std::vector<SpectralField> samples_;
};

inline constexpr std::size_t kMinTimeSamples = 16;

/// Taper the segment in time, zero-pad, transform in (t, x) and take the
/// weighted L^2 sum. The time transform at wavenumber k is taken in the frame
/// co-moving with the dispersion relation, so the tau band at each k is
/// centred on tau = k^3 and no temporal aliasing can shift a free wave off
/// the surface. With unit weight the result is the space-time L^2 norm of the
/// tapered segment.
double bourgain_norm(const SpaceTimeField& u, const BourgainParams& params);

struct MultilinearProbe {
  double s = 0.0;
  double b = 0.6;
  double b_prime = -0.4;
  double sigma = 0.0;
  TimeWindow window{};

  /// b > 1/2; s > -1/6; -1/2 < b' < -1/3 when s >= 0, -1/2 < b' < s - 1/3 otherwise.
  void validate() const;
};

/// || d/dx (u1 u2 u3 u4) ||_{X^{sigma,s,b'}} / prod_j || u_j ||_{X^{sigma,s,b}}
/// using the proxy norm. Returns 0 when the numerator vanishes; throws
/// std::invalid_argument if the numerator is nonzero but a factor norm is 0.
double probe_multilinear(const std::array<const SpaceTimeField*, 4>& factors, const MultilinearProbe& probe);

/// Pointwise-in-time d/dx (u1 u2 u3 u4), dealiased.
SpaceTimeField differentiated_product(const std::array<const SpaceTimeField*, 4>& factors);

}  // namespace gkdv
