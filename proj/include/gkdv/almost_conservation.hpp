#pragma once

// Growth of the Gevrey energy A_sigma(t)^2 = ||e^{sigma|D|} u(t)||_{L^2}^2
// along a trajectory, and the commutator term that drives it.
//
// With v = e^{sigma|D|} u, applying the multiplier to the equation gives
//   v_t + v_xxx + (v^4)_x = f,   f = d/dx [ v^4 - e^{sigma|D|}(u^4) ],
// and therefore d/dt int v^2 dx = 2 int v f dx.

#include <optional>
#include <string>
#include <vector>

#include "gkdv/solver.hpp"
#include "gkdv/spectral_core.hpp"

namespace gkdv {

/// f = d/dx [ (e^{sigma|D|} u)^4 - e^{sigma|D|} (u^4) ], both products dealiased.
SpectralField commutator_f(const SpectralField& u, double sigma);

struct EnergyIncrement {
  double delta = 0.0;    ///< max_n A_sigma(t_n)^2 - A_sigma(0)^2
  double t_argmax = 0.0;
  double initial = 0.0;  ///< A_sigma(0)^2
};

EnergyIncrement delta_energy(const Trajectory& trajectory, double sigma);

/// Increments below this fraction of A_sigma(0)^2 are indistinguishable from solver error.
inline constexpr double kMeasurementFloor = 1e-10;

struct SigmaSweepRow {
  double sigma = 0.0;
  double delta_e = 0.0;
  double bound = 0.0;  ///< sigma^{1/2} ||u0||_{G^sigma}^5
  double ratio = 0.0;  ///< delta_e / bound
  bool below_floor = false;
};

struct SigmaSweep {
  std::vector<SigmaSweepRow> rows;
  double exponent = 0.0;  ///< slope of log delta_e against log sigma
  double ratio_max = 0.0;
  double ratio_min = 0.0;
  std::size_t fitted_rows = 0;
};

/// Throws std::invalid_argument unless every sigma_i / sigma_0 is a power of two.
void require_dyadic(const std::vector<double>& sigmas);

/// One row per sigma measured on `trajectory`; no fit.
std::vector<SigmaSweepRow> measure_sweep_rows(const Trajectory& trajectory, const std::vector<double>& sigmas);

/// Fits the rows above the measurement floor. Throws std::runtime_error
/// ("insufficient signal") when fewer than two remain.
SigmaSweep fit_sweep(std::vector<SigmaSweepRow> rows);

/// Evolves u0 over [0, delta] once and measures every sigma on that run (the
/// dynamics do not depend on the sigma used to observe them). Rows below the
/// measurement floor are flagged and left out of the fit; fewer than two
/// usable rows raise std::runtime_error("insufficient signal").
SigmaSweep sigma_sweep(const SpectralField& u0, double delta, const std::vector<double>& sigmas,
                       const SolverConfig& solver);

/// Same, on an existing trajectory covering [0, delta].
SigmaSweep sigma_sweep(const Trajectory& trajectory, const std::vector<double>& sigmas);

struct EnergyIdentityResidual {
  double lhs = 0.0;       ///< A_sigma(t_end)^2 - A_sigma(0)^2
  double rhs = 0.0;       ///< 2 int_0^{t_end} int v f dx dt (composite Simpson in t)
  double residual = 0.0;  ///< |lhs - rhs| / A_sigma(0)^2
};

EnergyIdentityResidual energy_identity_residual(const Trajectory& trajectory, double sigma);

/// Composite Simpson on uniformly spaced samples; an even sample count closes
/// with a 3/8 panel. Needs at least three samples.
double simpson(const std::vector<double>& values, double spacing);

}  // namespace gkdv
