#include "gkdv/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "gkdv/gevrey.hpp"
#include "stats.hpp"

namespace gkdv {

namespace {

const double kTwoPow52 = std::pow(2.0, 2.5);
const double kTwoPow72 = std::pow(2.0, 3.5);

}  // namespace

void SchedulerConstants::validate() const {
  if (!(c0 > 0.0)) throw std::invalid_argument(fmt::format("scheduler: c0 must be positive, got {}", c0));
  if (!(r > 1.0)) throw std::invalid_argument(fmt::format("scheduler: r must exceed 1, got {}", r));
  if (!(C > 0.0)) throw std::invalid_argument(fmt::format("scheduler: C must be positive, got {}", C));
}

double local_timestep(double a0, double c0, double r) {
  SchedulerConstants{c0, r, 1.0}.validate();
  if (!(a0 >= 0.0)) throw std::invalid_argument(fmt::format("scheduler: A0 must be >= 0, got {}", a0));
  return c0 * std::pow(1.0 + a0, -r);
}

double strip_width(double horizon, double delta, double a0, double C, double sigma0) {
  if (!(delta > 0.0)) throw std::invalid_argument("scheduler: delta must be positive");
  if (!(a0 > 0.0)) throw std::invalid_argument("scheduler: A0 must be positive for a strip width");
  if (!(C > 0.0)) throw std::invalid_argument("scheduler: C must be positive");
  if (!(horizon >= delta)) {
    throw std::invalid_argument(fmt::format(
        "horizon T = {} is shorter than the local step delta = {}: the local result already covers [0, T] "
        "with the initial strip width (short-time regime)",
        horizon, delta));
  }
  const double root = delta / (kTwoPow72 * C * horizon * a0 * a0 * a0);
  return std::min(root * root, sigma0);
}

SchedulePlan make_plan(double a0, double sigma0, double horizon, const SchedulerConstants& constants) {
  constants.validate();
  if (!(sigma0 > 0.0)) throw std::invalid_argument("scheduler: sigma0 must be positive");
  SchedulePlan plan;
  plan.horizon = horizon;
  plan.a0 = a0;
  plan.sigma0 = sigma0;
  plan.constants = constants;
  plan.delta = local_timestep(a0, constants.c0, constants.r);
  plan.sigma = strip_width(horizon, plan.delta, a0, constants.C, sigma0);
  plan.steps = static_cast<std::size_t>(std::floor(horizon / plan.delta));
  const double root = constants.c0 / (kTwoPow72 * constants.C * a0 * a0 * a0 * std::pow(1.0 + a0, constants.r));
  plan.c1 = root * root;
  plan.capped = plan.sigma == sigma0 && plan.c1 / (horizon * horizon) >= sigma0;
  return plan;
}

SchedulePlan make_plan_for_datum(const SpectralField& u0, double sigma0, double s, double horizon,
                                 const SchedulerConstants& constants) {
  const double working = s == 0.0 ? sigma0 : 0.5 * sigma0;
  return make_plan(gevrey_norm(u0, {working, 0.0}), working, horizon, constants);
}

InductionReport verify_induction(const Trajectory& trajectory, const SchedulePlan& plan, double tolerance) {
  if (trajectory.empty()) throw std::invalid_argument("verify_induction: empty trajectory");
  const auto a = measure_a(trajectory, plan.sigma);
  const double a2_initial = a.front().value * a.front().value;
  const double a0 = plan.a0;
  const double per_step = plan.constants.C * std::sqrt(plan.sigma) * kTwoPow52 * std::pow(a0, 5);
  const double per_step_unit_c = std::sqrt(plan.sigma) * kTwoPow52 * std::pow(a0, 5);
  const double allowance = tolerance * a2_initial;
  const double t_last = trajectory.times().back();

  InductionReport report;
  std::size_t next = 0;
  double sup = 0.0;
  for (std::size_t k = 1; k <= plan.steps + 1; ++k) {
    const double t_end = std::min(static_cast<double>(k) * plan.delta, t_last);
    const double slack = 1e-9 * trajectory.sample_interval();
    while (next < a.size() && a[next].t <= t_end + slack) {
      sup = std::max(sup, a[next].value * a[next].value);
      ++next;
    }
    InductionStep step;
    step.k = k;
    step.t_end = t_end;
    step.sup_a2 = sup;
    step.accumulated = a2_initial + static_cast<double>(k) * per_step;
    step.ceiling = 2.0 * a0 * a0;
    step.margin_growth = step.accumulated - sup;
    step.margin_ceiling = step.ceiling - sup;
    step.pass_growth = step.margin_growth >= -allowance;
    step.pass_ceiling = step.margin_ceiling >= -allowance;
    if (!step.pass_growth || !step.pass_ceiling) ++report.failures;
    if (per_step_unit_c > 0.0) {
      const double needed = (sup - a2_initial - allowance) / (static_cast<double>(k) * per_step_unit_c);
      report.smallest_passing_c = std::max(report.smallest_passing_c, needed);
    }
    report.steps.push_back(step);
    if (t_end >= t_last) break;
  }
  return report;
}

double plan_floor(const SchedulePlan& plan, double t) {
  if (t <= 0.0) return plan.sigma0;
  return std::min(plan.sigma0, plan.c1 / (t * t));
}

RadiusTrace compare_radius_to_plan(const Trajectory& trajectory, const SchedulePlan& plan,
                                   const RadiusFitOptions& fit) {
  RadiusTrace trace;
  std::vector<double> log_t;
  std::vector<double> log_sigma;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double t = trajectory.times()[i];
    const RadiusEstimate estimate = estimate_radius(trajectory.snapshots()[i], fit);
    RadiusTracePoint point{t, estimate.sigma_hat, plan_floor(plan, t), estimate.classification};
    if (point.classification == DecayClass::at_noise_floor) {
      ++trace.unresolved;
    } else if (point.sigma_hat < point.floor) {
      ++trace.below_floor;
    }
    if (t >= 1.0 && point.sigma_hat > 0.0 && point.classification != DecayClass::at_noise_floor) {
      log_t.push_back(std::log(t));
      log_sigma.push_back(std::log(point.sigma_hat));
    }
    trace.points.push_back(point);
  }
  if (log_t.size() >= 2) trace.decay_exponent = least_squares_slope(log_t, log_sigma);
  return trace;
}

}  // namespace gkdv
