#include "gkdv/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "gkdv/almost_conservation.hpp"
#include "gkdv/bourgain.hpp"
#include "gkdv/checkpoint.hpp"

namespace gkdv {

namespace {

using nlohmann::json;

// Round-trip safe decimal.
std::string num(double v) { return fmt::format("{:.17g}", v); }

std::ofstream open_output(const CommandOptions& options, const std::string& name) {
  std::filesystem::create_directories(options.out);
  const auto path = options.out / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return out;
}

void write_json(const CommandOptions& options, const std::string& name, const json& doc) {
  auto out = open_output(options, name);
  out << doc.dump(2) << '\n';
}

json to_json(const RadiusEstimate& e) {
  return {{"sigma_hat", e.sigma_hat},     {"band", {e.k_lo, e.k_hi}}, {"residual", e.residual},
          {"modes_used", e.modes_used}, {"classification", std::string(to_string(e.classification))}};
}

json to_json(const SchedulePlan& p) {
  return {{"horizon", p.horizon},
          {"A0", p.a0},
          {"sigma0", p.sigma0},
          {"c0", p.constants.c0},
          {"r", p.constants.r},
          {"C", p.constants.C},
          {"delta", p.delta},
          {"n", p.steps},
          {"sigma", p.sigma},
          {"c1", p.c1},
          {"capped", p.capped}};
}

json to_json(const FuzzReport& r) {
  return {{"samples", r.samples},
          {"checks", r.checks},
          {"violations", r.violations},
          {"empirical_constant", r.empirical_constant},
          {"worst_case_quadruple",
           {{"xi", r.worst_case.xi},
            {"sigma", r.worst_case.sigma},
            {"theta", r.worst_case.theta},
            {"lhs_over_rhs", r.worst_case.lhs_over_rhs}}},
          {"slack_histogram", r.slack_histogram}};
}

SchedulePlan plan_for(const ExperimentConfig& config, const SpectralField& u0) {
  const auto& sc = config.schedule;
  if (sc.a0) return make_plan(*sc.a0, sc.sigma0, sc.horizon, sc.constants);
  return make_plan_for_datum(u0, sc.sigma0, config.analytics.s, sc.horizon, sc.constants);
}

}  // namespace

int cmd_simulate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const Grid grid = config.grid();
  const SpectralField u0 = make_datum(grid, config.datum);
  const Trajectory trajectory = evolve(u0, config.solver);
  const EnergyReport energy = conservation_report(trajectory);

  std::vector<std::vector<TimedValue>> a_columns;
  for (double sigma : config.analytics.sigmas) a_columns.push_back(measure_a(trajectory, sigma));

  auto csv = open_output(options, "trajectory.csv");
  csv << "t,l2,mass,hamiltonian";
  for (double sigma : config.analytics.sigmas) csv << ",A_sigma=" << num(sigma);
  csv << ",sigma_hat,decay_class\n";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const auto& e = energy[i];
    csv << num(e.t) << ',' << num(e.l2) << ',' << num(e.mass) << ',' << num(e.hamiltonian);
    for (const auto& column : a_columns) csv << ',' << num(column[i].value);
    const RadiusEstimate r = estimate_radius(trajectory.snapshots()[i], config.analytics.fit);
    csv << ',' << num(r.sigma_hat) << ',' << to_string(r.classification) << '\n';
  }

  for (std::size_t c = 0; c < config.checkpoint_times.size(); ++c) {
    const double wanted = config.checkpoint_times[c];
    std::size_t best = 0;
    for (std::size_t i = 1; i < trajectory.size(); ++i) {
      if (std::abs(trajectory.times()[i] - wanted) < std::abs(trajectory.times()[best] - wanted)) best = i;
    }
    std::filesystem::create_directories(options.out);
    write_checkpoint(options.out / fmt::format("checkpoint_{:03}.gkdv", c), inverse(trajectory.snapshots()[best]),
                     trajectory.times()[best]);
  }

  fmt::print(log, "simulate: {} samples to t = {} (dt = {:.3e}); L2 drift {:.2e}, Hamiltonian drift {:.2e}\n",
             trajectory.size(), trajectory.times().back(), trajectory.step(),
             relative_drift(energy, &EnergySample::l2), relative_drift(energy, &EnergySample::hamiltonian));
  return kExitSuccess;
}

int cmd_radius(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const SpectralField u0 = make_datum(config.grid(), config.datum);
  const RadiusEstimate estimate = estimate_radius(u0, config.analytics.fit);
  write_json(options, "radius.json", to_json(estimate));
  fmt::print(log, "radius: sigma_hat = {:.6g} ({}, {} modes)\n", estimate.sigma_hat,
             to_string(estimate.classification), estimate.modes_used);
  return kExitSuccess;
}

int cmd_sweep_sigma(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const SpectralField u0 = make_datum(config.grid(), config.datum);
  const auto& sc = config.schedule;
  const double delta = config.sweep_delta.value_or(
      local_timestep(gevrey_norm(u0, {sc.sigma0, 0.0}), sc.constants.c0, sc.constants.r));
  const auto sigmas = config.sweep_sigma_list();
  require_dyadic(sigmas);
  for (double sigma : sigmas) (void)exp_multiplier(u0, sigma);

  SolverConfig solver = config.solver;
  solver.horizon = delta;
  const Trajectory trajectory = evolve(u0, solver);
  const auto rows = measure_sweep_rows(trajectory, sigmas);

  auto csv = open_output(options, "sweep.csv");
  csv << "sigma,delta_e,bound,ratio,flag\n";
  for (const auto& row : rows) {
    csv << num(row.sigma) << ',' << num(row.delta_e) << ',' << num(row.bound) << ',' << num(row.ratio) << ','
        << (row.below_floor ? "below-floor" : "ok") << '\n';
  }
  csv.close();

  json sidecar = {{"delta", delta}, {"rows", rows.size()}};
  int code = kExitSuccess;
  try {
    const SigmaSweep sweep = fit_sweep(rows);
    sidecar["exponent"] = sweep.exponent;
    sidecar["fitted_rows"] = sweep.fitted_rows;
    sidecar["ratio_max"] = sweep.ratio_max;
    sidecar["ratio_min"] = sweep.ratio_min;
    fmt::print(log, "sweep-sigma: delta = {:.4g}, exponent = {:.4f} over {} rows, ratio spread {:.3g}\n", delta,
               sweep.exponent, sweep.fitted_rows, sweep.ratio_max / sweep.ratio_min);
  } catch (const std::runtime_error& e) {
    sidecar["error"] = e.what();
    fmt::print(log, "sweep-sigma: {}\n", e.what());
    code = kExitCheckFailed;
  }
  write_json(options, "sweep.json", sidecar);
  return code;
}

int cmd_fuzz_symbol(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  SampleSpec spec = config.symbol;
  if (options.seed) spec.seed = *options.seed;
  if (options.samples) spec.samples = *options.samples;
  if (spec.samples < 1) throw std::invalid_argument("--samples must be >= 1");

  const FuzzReport random = fuzz_symbol_bound(spec);
  json doc = to_json(random);
  doc["seed"] = spec.seed;
  std::uint64_t violations = random.violations;
  if (config.symbol_grid_range > 0) {
    const FuzzReport grid = exhaustive_symbol_check(config.symbol_grid_range, {0.1, 1.0}, {0.0, 0.5, 1.0});
    doc["exhaustive"] = to_json(grid);
    doc["exhaustive"]["range"] = config.symbol_grid_range;
    violations += grid.violations;
  }
  write_json(options, "fuzz.json", doc);
  fmt::print(log, "fuzz-symbol: {} samples, {} violations, empirical constant {:.6g}\n", random.samples, violations,
             random.empirical_constant);
  return options.verify && violations > 0 ? kExitCheckFailed : kExitSuccess;
}

int cmd_schedule(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  const SpectralField u0 = make_datum(config.grid(), config.datum);
  const SchedulePlan plan = plan_for(config, u0);
  write_json(options, "plan.json", to_json(plan));
  fmt::print(log, "schedule: delta = {:.6g}, n = {}, sigma = {:.6g}, c1 = {:.6g}{}\n", plan.delta, plan.steps,
             plan.sigma, plan.c1, plan.capped ? " (capped at sigma0)" : "");
  if (!options.verify) return kExitSuccess;

  SolverConfig solver = config.solver;
  solver.horizon = plan.horizon;
  const Trajectory trajectory = evolve(u0, solver);
  const InductionReport induction = verify_induction(trajectory, plan);
  const RadiusTrace trace = compare_radius_to_plan(trajectory, plan, config.analytics.fit);

  auto csv = open_output(options, "induction.csv");
  csv << "k,t_end,sup_a2,accumulated,ceiling,margin_growth,margin_ceiling,pass\n";
  for (const auto& s : induction.steps) {
    csv << s.k << ',' << num(s.t_end) << ',' << num(s.sup_a2) << ',' << num(s.accumulated) << ',' << num(s.ceiling)
        << ',' << num(s.margin_growth) << ',' << num(s.margin_ceiling) << ','
        << (s.pass_growth && s.pass_ceiling ? 1 : 0) << '\n';
  }
  csv.close();
  auto trace_csv = open_output(options, "radius_trace.csv");
  trace_csv << "t,sigma_hat,plan_floor,decay_class\n";
  for (const auto& p : trace.points) {
    trace_csv << num(p.t) << ',' << num(p.sigma_hat) << ',' << num(p.floor) << ',' << to_string(p.classification)
              << '\n';
  }
  trace_csv.close();

  write_json(options, "verify.json",
             {{"induction_steps", induction.steps.size()},
              {"induction_failures", induction.failures},
              {"smallest_passing_C", induction.smallest_passing_c},
              {"radius_below_plan", trace.below_floor},
              {"radius_unresolved", trace.unresolved},
              {"radius_decay_exponent", trace.decay_exponent}});
  fmt::print(log, "schedule --verify: {} induction steps, {} failures, smallest passing C = {:.4g}; "
                  "radius below plan at {} samples, decay exponent {:.4f}\n",
             induction.steps.size(), induction.failures, induction.smallest_passing_c, trace.below_floor,
             trace.decay_exponent);
  return induction.failures == 0 && trace.below_floor == 0 ? kExitSuccess : kExitCheckFailed;
}

int cmd_probe_multilinear(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log) {
  MultilinearProbe probe;
  probe.s = config.analytics.s;
  probe.b = config.analytics.b;
  probe.b_prime = config.analytics.b_prime;
  probe.validate();

  const SpectralField u0 = make_datum(config.grid(), config.datum);
  const Trajectory trajectory = evolve(u0, config.solver);
  const SpaceTimeField segment = SpaceTimeField::from_trajectory(trajectory);
  const std::array<const SpaceTimeField*, 4> factors{&segment, &segment, &segment, &segment};

  json ratios = json::array();
  double lo = INFINITY;
  double hi = 0.0;
  for (double sigma : config.analytics.sigmas) {
    probe.sigma = sigma;
    const double ratio = probe_multilinear(factors, probe);
    ratios.push_back({{"sigma", sigma}, {"ratio", ratio}});
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  write_json(options, "probe.json",
             {{"s", probe.s}, {"b", probe.b}, {"b_prime", probe.b_prime}, {"time_samples", segment.size()},
              {"ratios", ratios}, {"spread", lo > 0.0 ? hi / lo : 0.0}});
  fmt::print(log, "probe-multilinear: {} sigmas, ratio range [{:.4g}, {:.4g}]\n", ratios.size(), lo, hi);
  return kExitSuccess;
}

int run_command(std::string_view name, const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& log, std::ostream& err) {
  try {
    if (name == "simulate") return cmd_simulate(config, options, log);
    if (name == "radius") return cmd_radius(config, options, log);
    if (name == "sweep-sigma") return cmd_sweep_sigma(config, options, log);
    if (name == "fuzz-symbol") return cmd_fuzz_symbol(config, options, log);
    if (name == "schedule") return cmd_schedule(config, options, log);
    if (name == "probe-multilinear") return cmd_probe_multilinear(config, options, log);
    fmt::print(err, "unknown command '{}'\n", name);
    return kExitConfigError;
  } catch (const NumericalAbort& e) {
    fmt::print(err, "numerical abort: {}\n", e.what());
    return kExitNumericalAbort;
  } catch (const ConfigError& e) {
    fmt::print(err, "config error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitConfigError;
  } catch (const CheckpointError& e) {
    fmt::print(err, "checkpoint error: {}\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitFailure;
  }
}

}  // namespace gkdv
