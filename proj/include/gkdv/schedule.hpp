#pragma once

// Continuation scheme: iterate the local solution over steps of length
// delta = c0 (1 + A0)^{-r} while shrinking the strip width to
//
//   sigma = c1 T^{-2},   c1 = ( c0 / (C 2^{7/2} A0^3 (1 + A0)^r) )^2,
//
// the value at which (2T/delta) C sigma^{1/2} 2^{5/2} A0^3 = 1. The induction
// then keeps sup_{[0,k delta]} A_sigma^2 <= A_sigma(0)^2 + k C sigma^{1/2} 2^{5/2} A0^5
// and <= 2 A0^2 for every k.

#include <cstddef>
#include <limits>
#include <vector>

#include "gkdv/gevrey.hpp"
#include "gkdv/solver.hpp"
#include "gkdv/spectral_core.hpp"

namespace gkdv {

struct SchedulerConstants {
  double c0 = 0.1;
  double r = 2.0;
  double C = 1.0;

  void validate() const;
};

/// delta = c0 (1 + A0)^{-r}. Rejects r <= 1, c0 <= 0, A0 < 0.
double local_timestep(double a0, double c0, double r);

/// sigma = (delta / (2^{7/2} C T A0^3))^2, capped at sigma0.
/// Rejects T < delta: a horizon shorter than one local step needs no iteration.
double strip_width(double horizon, double delta, double a0, double C,
                   double sigma0 = std::numeric_limits<double>::infinity());

struct SchedulePlan {
  double horizon = 0.0;
  double a0 = 0.0;      ///< A_{sigma0}(0)
  double sigma0 = 0.0;  ///< strip width of the datum used for A0
  SchedulerConstants constants{};
  double delta = 0.0;
  std::size_t steps = 0;  ///< n = floor(T / delta)
  double sigma = 0.0;
  double c1 = 0.0;
  bool capped = false;  ///< sigma = sigma0 because the formula exceeded it
};

SchedulePlan make_plan(double a0, double sigma0, double horizon, const SchedulerConstants& constants = {});

/// Plan for a datum with Sobolev index s. For s != 0 the machinery runs at
/// sigma0 / 2, where the datum is controlled in G^{sigma0/2} for any s.
SchedulePlan make_plan_for_datum(const SpectralField& u0, double sigma0, double s, double horizon,
                                 const SchedulerConstants& constants = {});

struct InductionStep {
  std::size_t k = 0;
  double t_end = 0.0;
  double sup_a2 = 0.0;          ///< sup_{[0, k delta]} A_sigma(t)^2 over sampled times
  double accumulated = 0.0;     ///< A_sigma(0)^2 + k C sigma^{1/2} 2^{5/2} A0^5
  double ceiling = 0.0;         ///< 2 A0^2
  double margin_growth = 0.0;   ///< accumulated - sup_a2
  double margin_ceiling = 0.0;  ///< ceiling - sup_a2
  bool pass_growth = false;
  bool pass_ceiling = false;
};

struct InductionReport {
  std::vector<InductionStep> steps;
  std::size_t failures = 0;
  /// Smallest C for which every growth inequality holds at this sigma
  /// (0 if A_sigma^2 never exceeds its initial value).
  double smallest_passing_c = 0.0;
};

/// Checks both induction inequalities for k = 1 .. n+1 (windows clipped to the
/// trajectory end) against measured A_sigma. `tolerance` is a relative
/// allowance on A_sigma(0)^2 for solver drift.
InductionReport verify_induction(const Trajectory& trajectory, const SchedulePlan& plan, double tolerance = 1e-8);

/// min(sigma0, c1 t^{-2}); sigma0 at t = 0.
double plan_floor(const SchedulePlan& plan, double t);

struct RadiusTracePoint {
  double t = 0.0;
  double sigma_hat = 0.0;
  double floor = 0.0;
  DecayClass classification = DecayClass::at_noise_floor;
};

struct RadiusTrace {
  std::vector<RadiusTracePoint> points;
  std::size_t below_floor = 0;   ///< resolved samples with sigma_hat < plan_floor(t)
  std::size_t unresolved = 0;    ///< samples classified at-noise-floor
  double decay_exponent = 0.0;   ///< slope of log sigma_hat against log t over t >= 1
};

/// Fitted radius of every snapshot against the plan's lower curve.
RadiusTrace compare_radius_to_plan(const Trajectory& trajectory, const SchedulePlan& plan,
                                   const RadiusFitOptions& fit = {});

}  // namespace gkdv
