#include "gkdv/symbol_bound.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

FrequencyQuadruple::FrequencyQuadruple(std::array<double, 4> xi) : xi_(xi) {
  for (std::size_t j = 0; j < 4; ++j) {
    if (!std::isfinite(xi[j])) throw std::invalid_argument("frequency quadruple: non-finite entry");
    sorted_[j] = std::abs(xi[j]);
  }
  std::sort(sorted_.begin(), sorted_.end());
}

double FrequencyQuadruple::sum_abs() const noexcept {
  return sorted_[0] + sorted_[1] + sorted_[2] + sorted_[3];
}

double FrequencyQuadruple::abs_sum() const noexcept { return std::abs(xi_[0] + xi_[1] + xi_[2] + xi_[3]); }

namespace {

void check_arguments(double sigma, double theta) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument(fmt::format("symbol: bad sigma {}", sigma));
  if (!(theta >= 0.0 && theta <= 1.0)) throw std::invalid_argument(fmt::format("symbol: theta {} outside [0, 1]", theta));
}

void guard(const FrequencyQuadruple& q, double sigma) {
  if (sigma * q.sum_abs() > kMaxExponent) {
    throw OverflowGuardError(fmt::format("symbol: sigma * sum|xi| = {} exceeds {}", sigma * q.sum_abs(), kMaxExponent));
  }
}

// sum|xi| - |sum xi| = 2 min(sum of positive parts, sum of negative parts):
// exactly zero without mixed signs, no cancellation otherwise.
double gap(const FrequencyQuadruple& q) {
  double positive = 0.0;
  double negative = 0.0;
  for (double x : q.values()) (x > 0.0 ? positive : negative) += std::abs(x);
  return 2.0 * std::min(positive, negative);
}

double bound_factor(const FrequencyQuadruple& q, double sigma, double theta) {
  if (theta == 0.0) return 1.0;
  return std::pow(kSymbolConstant * sigma * q.second_largest(), theta);
}

}  // namespace

SymbolGap symbol_gap(const FrequencyQuadruple& q, double sigma) {
  check_arguments(sigma, 0.0);
  guard(q, sigma);
  return {std::exp(sigma * q.abs_sum()) * std::expm1(sigma * gap(q)), q.sum_abs()};
}

BoundCheck check_symbol_bound(const FrequencyQuadruple& q, double sigma, double theta) {
  check_arguments(sigma, theta);
  const SymbolGap g = symbol_gap(q, sigma);
  BoundCheck out;
  out.lhs = g.lhs;
  out.rhs = bound_factor(q, sigma, theta) * std::exp(sigma * g.sum_abs);
  out.slack = out.rhs - out.lhs;
  out.pass = out.lhs <= out.rhs;
  return out;
}

BoundCheck scaled_symbol_bound(const FrequencyQuadruple& q, double sigma, double theta) {
  check_arguments(sigma, theta);
  BoundCheck out;
  out.lhs = -std::expm1(-sigma * gap(q));
  out.rhs = bound_factor(q, sigma, theta);
  out.slack = out.rhs - out.lhs;
  out.pass = out.lhs <= out.rhs;
  return out;
}

namespace {

class ReportBuilder {
 public:
  explicit ReportBuilder(std::vector<double> thetas) : thetas_(std::move(thetas)) {
    for (double theta : thetas_) check_arguments(0.0, theta);
  }

  void add(const FrequencyQuadruple& q, double sigma) {
    ++report_.samples;
    for (double theta : thetas_) {
      const BoundCheck c = scaled_symbol_bound(q, sigma, theta);
      ++report_.checks;
      if (!c.pass) ++report_.violations;

      const double ratio = c.rhs > 0.0 ? c.lhs / c.rhs : (c.lhs > 0.0 ? INFINITY : 0.0);
      if (report_.checks == 1 || ratio > report_.worst_case.lhs_over_rhs) {
        report_.worst_case = {q.values(), sigma, theta, ratio};
      }

      // slack / rhs in [0, 1] when the bound holds; 0/0 counts as fully slack.
      const double relative_slack = c.rhs > 0.0 ? c.slack / c.rhs : 1.0;
      const double clamped = std::clamp(relative_slack, 0.0, 1.0);
      const auto bin = std::min<std::size_t>(9, static_cast<std::size_t>(clamped * 10.0));
      ++report_.slack_histogram[bin];
    }
    if (const double lhs = -std::expm1(-sigma * gap(q)); lhs > 0.0) {
      const double denom = sigma * q.second_largest();
      const double constant = denom > 0.0 ? lhs / denom : INFINITY;
      report_.empirical_constant = std::max(report_.empirical_constant, constant);
    }
  }

  FuzzReport take() { return report_; }

 private:
  std::vector<double> thetas_;
  FuzzReport report_;
};

}  // namespace

FuzzReport fuzz_symbol_bound(const SampleSpec& spec) {
  if (spec.samples < 1) throw std::invalid_argument("symbol fuzz: need at least one sample");
  if (!(spec.xi_max > 0.0) || !(spec.sigma_max > 0.0)) throw std::invalid_argument("symbol fuzz: bad ranges");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double lo = spec.all_positive ? 0.0 : -spec.xi_max;
  ReportBuilder builder(spec.thetas);
  for (std::uint64_t i = 0; i < spec.samples; ++i) {
    std::array<double, 4> xi{};
    for (auto& x : xi) x = lo + (spec.xi_max - lo) * unit(rng);
    const double sigma = spec.sigma_max * (1.0 - unit(rng));
    builder.add(FrequencyQuadruple(xi), sigma);
  }
  return builder.take();
}

FuzzReport exhaustive_symbol_check(int range, const std::vector<double>& sigmas, const std::vector<double>& thetas) {
  if (range < 0) throw std::invalid_argument("symbol grid: negative range");
  ReportBuilder builder(thetas);
  for (double sigma : sigmas) {
    for (int a = -range; a <= range; ++a)
      for (int b = -range; b <= range; ++b)
        for (int c = -range; c <= range; ++c)
          for (int d = -range; d <= range; ++d) {
            builder.add(FrequencyQuadruple({double(a), double(b), double(c), double(d)}), sigma);
          }
  }
  return builder.take();
}

FuzzReport sharpness_profile(const SampleSpec& spec) { return fuzz_symbol_bound(spec); }

}  // namespace gkdv
