#pragma once

// Time integration of  u_t + u_xxx + (u^4)_x = 0  on the periodic grid.
//
// The stiff dispersive part is handled exactly by the linear group
// W(t) (symbol e^{i t k^3}); the nonlinear term is advanced with classical
// RK4 in the interaction variable v = W(-t) u (Lawson integrating factor).

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// Raised when a run has to stop because its output can no longer be trusted.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverConfig {
  double dt = 1e-3;            ///< requested step; the stability policy may shrink it
  double horizon = 1.0;        ///< final time T
  std::size_t sample_stride = 1;
  bool nonlinear = true;
  bool dealias = true;

  void validate() const;
};

/// Time-stamped spectral snapshots, uniformly spaced by `sample_interval()`.
class Trajectory {
 public:
  Trajectory(double step, std::size_t stride, bool nonlinear = true);

  void append(double t, SpectralField snapshot);

  const Grid& grid() const;
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<SpectralField>& snapshots() const noexcept { return snapshots_; }
  const SpectralField& front() const { return snapshots_.front(); }
  const SpectralField& back() const { return snapshots_.back(); }

  double step() const noexcept { return step_; }
  std::size_t stride() const noexcept { return stride_; }
  /// False for runs of the linear flow alone.
  bool nonlinear() const noexcept { return nonlinear_; }
  double sample_interval() const noexcept { return step_ * static_cast<double>(stride_); }

 private:
  double step_;
  std::size_t stride_;
  bool nonlinear_;
  std::vector<double> times_;
  std::vector<SpectralField> snapshots_;
};

struct EnergySample {
  double t = 0.0;
  double mass = 0.0;         ///< int u dx
  double l2 = 0.0;           ///< ||u||_{L^2}
  double hamiltonian = 0.0;  ///< int (u_x^2 / 2 - u^5 / 5) dx
};

using EnergyReport = std::vector<EnergySample>;

/// Exact linear flow: c_k -> e^{i t k^3} c_k.
SpectralField propagator(const SpectralField& u, double t);

/// -(u^4)_x
SpectralField rhs_nonlinear(const SpectralField& u, bool dealias = true);

/// One Lawson RK4 step of fixed size. Precomputes the phase factors once.
class IntegratingFactorRk4 {
 public:
  IntegratingFactorRk4(const Grid& grid, double dt, bool nonlinear = true, bool dealias = true);

  SpectralField advance(const SpectralField& u) const;
  double dt() const noexcept { return dt_; }

 private:
  SpectralField nonlinear_term(const SpectralField& u) const;

  Grid grid_;
  double dt_;
  bool nonlinear_;
  bool dealias_;
  std::vector<Complex> half_phase_;  // e^{i k^3 dt/2}
  std::vector<Complex> full_phase_;  // e^{i k^3 dt}
};

SpectralField step(const SpectralField& u, double dt, bool nonlinear = true);

/// Largest step allowed by the explicit treatment of the advection speed 4u^3:
/// 0.5 / (4 ||u||_inf^3 k_max). Infinite for the zero field.
double stable_step(const SpectralField& u);

/// Integrates to config.horizon. The step is min(config.dt, stable_step(u0)),
/// shrunk so that a whole number of strides lands exactly on the horizon.
/// Throws NumericalAbort on non-finite values or relative L^2 drift above 1e-4.
Trajectory evolve(const SpectralField& u0, const SolverConfig& config);

double hamiltonian(const SpectralField& u);
EnergyReport conservation_report(const Trajectory& trajectory);

/// Relative drift max_t |q(t) - q(0)| / |q(0)| of one invariant (absolute if q(0) = 0).
double relative_drift(const EnergyReport& report, double EnergySample::*quantity);

}  // namespace gkdv
