#include "gkdv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace gkdv {

namespace {

constexpr double kMaxL2Drift = 1e-4;

std::vector<Complex> dispersion_phases(const Grid& grid, double t) {
  std::vector<Complex> phase(grid.half_size());
  for (std::size_t m = 0; m < phase.size(); ++m) {
    const double k = grid.wavenumber(static_cast<std::ptrdiff_t>(m));
    phase[m] = std::polar(1.0, k * k * k * t);
  }
  // e^{i t k^3} at the unpaired Nyquist mode would make the field complex.
  phase.back() = 0.0;
  return phase;
}

void apply_phase(SpectralField& u, const std::vector<Complex>& phase) {
  auto modes = u.modes();
  for (std::size_t m = 0; m < modes.size(); ++m) modes[m] *= phase[m];
}

}  // namespace

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument(fmt::format("solver: dt must be positive, got {}", dt));
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument(fmt::format("solver: horizon must be positive, got {}", horizon));
  }
  if (sample_stride < 1) throw std::invalid_argument("solver: sample stride must be >= 1");
}

// --------------------------------------------------------------- Trajectory

Trajectory::Trajectory(double step, std::size_t stride, bool nonlinear)
    : step_(step), stride_(stride), nonlinear_(nonlinear) {}

void Trajectory::append(double t, SpectralField snapshot) {
  if (times_.empty()) {
    if (t != 0.0) throw std::invalid_argument("trajectory must start at t = 0");
  } else {
    if (!(t > times_.back())) throw std::invalid_argument("trajectory times must increase strictly");
    require_same_grid(snapshots_.front().grid(), snapshot.grid());
  }
  times_.push_back(t);
  snapshots_.push_back(std::move(snapshot));
}

const Grid& Trajectory::grid() const {
  if (snapshots_.empty()) throw std::logic_error("empty trajectory has no grid");
  return snapshots_.front().grid();
}

// ------------------------------------------------------------------- flows

SpectralField propagator(const SpectralField& u, double t) {
  SpectralField out = u;
  apply_phase(out, dispersion_phases(u.grid(), t));
  return out;
}

SpectralField rhs_nonlinear(const SpectralField& u, bool dealias) {
  SpectralField quartic = dealias ? nonlinear_power4(u) : aliased_power4(u);
  SpectralField out = derivative(quartic, 1);
  out *= -1.0;
  return out;
}

IntegratingFactorRk4::IntegratingFactorRk4(const Grid& grid, double dt, bool nonlinear, bool dealias)
    : grid_(grid),
      dt_(dt),
      nonlinear_(nonlinear),
      dealias_(dealias),
      half_phase_(dispersion_phases(grid, 0.5 * dt)),
      full_phase_(dispersion_phases(grid, dt)) {}

SpectralField IntegratingFactorRk4::nonlinear_term(const SpectralField& u) const {
  return rhs_nonlinear(u, dealias_);
}

SpectralField IntegratingFactorRk4::advance(const SpectralField& u) const {
  require_same_grid(grid_, u.grid());
  SpectralField next = u;
  apply_phase(next, full_phase_);
  if (!nonlinear_) return next;

  const double h = dt_;
  const SpectralField a = nonlinear_term(u);

  SpectralField stage = u + (0.5 * h) * a;
  apply_phase(stage, half_phase_);
  SpectralField b = nonlinear_term(stage);

  SpectralField half_u = u;
  apply_phase(half_u, half_phase_);
  stage = half_u + (0.5 * h) * b;
  SpectralField c = nonlinear_term(stage);

  stage = half_u + h * c;
  apply_phase(stage, half_phase_);
  const SpectralField d = nonlinear_term(stage);

  // next = E^2 u + h/6 (E^2 a + 2 E (b + c) + d)
  SpectralField mid = b + c;
  apply_phase(mid, half_phase_);
  SpectralField first = a;
  apply_phase(first, full_phase_);

  auto out = next.modes();
  const auto fa = first.modes();
  const auto fm = mid.modes();
  const auto fd = d.modes();
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] += (h / 6.0) * (fa[m] + 2.0 * fm[m] + fd[m]);
  }
  return next;
}

SpectralField step(const SpectralField& u, double dt, bool nonlinear) {
  return IntegratingFactorRk4(u.grid(), dt, nonlinear).advance(u);
}

double stable_step(const SpectralField& u) {
  const double peak = sup_norm(u);
  if (peak == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 / (4.0 * peak * peak * peak * u.grid().k_max());
}

Trajectory evolve(const SpectralField& u0, const SolverConfig& config) {
  config.validate();
  if (!u0.all_finite()) throw NumericalAbort("initial datum has non-finite coefficients");

  const double limit = config.nonlinear ? std::min(config.dt, stable_step(u0)) : config.dt;
  const auto stride = config.sample_stride;
  const double samples_needed = std::ceil(config.horizon / (limit * static_cast<double>(stride)) - 1e-12);
  const auto samples = static_cast<std::size_t>(std::max(1.0, samples_needed));
  const std::size_t steps = samples * stride;
  const double dt = config.horizon / static_cast<double>(steps);

  const IntegratingFactorRk4 stepper(u0.grid(), dt, config.nonlinear, config.dealias);
  Trajectory trajectory(dt, stride, config.nonlinear);
  trajectory.append(0.0, u0);

  const double l2_initial = l2_norm(u0);
  SpectralField u = u0;
  for (std::size_t n = 1; n <= steps; ++n) {
    u = stepper.advance(u);
    if (n % stride != 0) continue;

    const double t = n == steps ? config.horizon : static_cast<double>(n) * dt;
    if (!u.all_finite()) throw NumericalAbort(fmt::format("non-finite solution at t = {}", t));
    if (l2_initial > 0.0) {
      const double drift = std::abs(l2_norm(u) - l2_initial) / l2_initial;
      if (drift > kMaxL2Drift) {
        throw NumericalAbort(fmt::format(
            "relative L2 drift {:.3e} at t = {} exceeds {:.0e}; the run is under-resolved", drift, t, kMaxL2Drift));
      }
    }
    trajectory.append(t, u);
  }
  return trajectory;
}

// ------------------------------------------------------------ diagnostics

double hamiltonian(const SpectralField& u) {
  const SpectralField ux = derivative(u, 1);
  const double kinetic = 0.5 * inner_product(ux, ux);
  // u^5 has modes up to 5N/2, so the mean is exact on a 3N grid.
  const auto samples = sample_on_padded_grid(u, 3 * u.grid().size());
  double sum = 0.0;
  for (double v : samples) {
    const double sq = v * v;
    sum += sq * sq * v;
  }
  const double potential = u.grid().length() * sum / static_cast<double>(samples.size()) / 5.0;
  return kinetic - potential;
}

EnergyReport conservation_report(const Trajectory& trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("conservation report needs a non-empty trajectory");
  EnergyReport report;
  report.reserve(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const SpectralField& u = trajectory.snapshots()[i];
    report.push_back({trajectory.times()[i], integral(u), l2_norm(u), hamiltonian(u)});
  }
  return report;
}

double relative_drift(const EnergyReport& report, double EnergySample::*quantity) {
  if (report.empty()) return 0.0;
  const double reference = report.front().*quantity;
  double worst = 0.0;
  for (const auto& sample : report) worst = std::max(worst, std::abs(sample.*quantity - reference));
  return reference != 0.0 ? worst / std::abs(reference) : worst;
}

}  // namespace gkdv
