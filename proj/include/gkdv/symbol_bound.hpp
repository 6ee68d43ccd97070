#pragma once

// The exponential symbol inequality for four interacting frequencies:
//
//   e^{sigma sum|xi_j|} - e^{sigma |sum xi_j|}  <=  [24 sigma xi_b]^theta  e^{sigma sum|xi_j|},
//
// theta in [0, 1], where xi_b is the second largest of |xi_1| .. |xi_4|.
// The gap sum|xi_j| - |sum xi_j| only receives contributions from pairs of
// opposite sign, each bounded by the product of the two largest magnitudes,
// which is why the second largest (not a smaller order statistic) controls it.

#include <array>
#include <cstdint>
#include <vector>

namespace gkdv {

/// Four frequencies together with the order statistics of their magnitudes.
class FrequencyQuadruple {
 public:
  explicit FrequencyQuadruple(std::array<double, 4> xi);

  const std::array<double, 4>& values() const noexcept { return xi_; }
  /// Magnitudes sorted ascending: [minimum, third largest, second largest, maximum].
  const std::array<double, 4>& sorted_magnitudes() const noexcept { return sorted_; }

  double minimum() const noexcept { return sorted_[0]; }
  double third_largest() const noexcept { return sorted_[1]; }
  double second_largest() const noexcept { return sorted_[2]; }
  double maximum() const noexcept { return sorted_[3]; }

  double sum_abs() const noexcept;
  double abs_sum() const noexcept;

 private:
  std::array<double, 4> xi_;
  std::array<double, 4> sorted_;
};

struct SymbolGap {
  double lhs = 0.0;      ///< e^{sigma sum|xi|} - e^{sigma |sum xi|}
  double sum_abs = 0.0;  ///< sum |xi_j|
};

/// Evaluated as e^{sigma|sum xi|} expm1(sigma (sum|xi| - |sum xi|)) to avoid
/// cancellation. Throws OverflowGuardError if sigma sum|xi_j| > kMaxExponent.
SymbolGap symbol_gap(const FrequencyQuadruple& q, double sigma);

struct BoundCheck {
  bool pass = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  ///< rhs - lhs
};

inline constexpr double kSymbolConstant = 24.0;

/// Unscaled check; same overflow guard as symbol_gap.
BoundCheck check_symbol_bound(const FrequencyQuadruple& q, double sigma, double theta);

/// Both sides divided by e^{sigma sum|xi_j|}:
///   lhs = -expm1(-sigma (sum|xi| - |sum xi|)),  rhs = (24 sigma xi_b)^theta.
/// Valid for every input, so large sigma sum|xi_j| can still be checked.
BoundCheck scaled_symbol_bound(const FrequencyQuadruple& q, double sigma, double theta);

struct SampleSpec {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double xi_max = 100.0;     ///< xi_j uniform in [-xi_max, xi_max]
  double sigma_max = 5.0;    ///< sigma uniform in (0, sigma_max]
  std::vector<double> thetas{0.0, 0.25, 0.5, 0.75, 1.0};
  bool all_positive = false;  ///< draw xi_j from [0, xi_max] only
};

struct WorstCase {
  std::array<double, 4> xi{};
  double sigma = 0.0;
  double theta = 0.0;
  double lhs_over_rhs = 0.0;
};

struct FuzzReport {
  std::uint64_t samples = 0;  ///< (quadruple, sigma) draws
  std::uint64_t checks = 0;   ///< draws times thetas
  std::uint64_t violations = 0;
  /// Smallest K with lhs <= K sigma xi_b e^{sigma sum|xi|} over all draws
  /// (0 if no draw had lhs > 0).
  double empirical_constant = 0.0;
  WorstCase worst_case{};
  /// Histogram of slack / rhs over [0, 1] in ten equal bins.
  std::array<std::uint64_t, 10> slack_histogram{};
};

/// Randomized check of the bound; deterministic for a given spec.
FuzzReport fuzz_symbol_bound(const SampleSpec& spec);

/// Every xi in {-range..range}^4 for every sigma and theta given.
FuzzReport exhaustive_symbol_check(int range, const std::vector<double>& sigmas, const std::vector<double>& thetas);

/// Distribution of slack / rhs plus the empirical constant, over `spec`.
FuzzReport sharpness_profile(const SampleSpec& spec);

}  // namespace gkdv
