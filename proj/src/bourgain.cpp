#include "gkdv/bourgain.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fft.hpp"

namespace gkdv {

SpaceTimeField::SpaceTimeField(double time_step, std::vector<SpectralField> samples)
    : time_step_(time_step), samples_(std::move(samples)) {
  if (!(time_step > 0.0)) throw std::invalid_argument("space-time field: time step must be positive");
  if (samples_.size() < kMinTimeSamples) {
    throw std::invalid_argument(
        fmt::format("space-time field: need at least {} time samples, got {}", kMinTimeSamples, samples_.size()));
  }
  for (const auto& s : samples_) require_same_grid(samples_.front().grid(), s.grid());
}

SpaceTimeField SpaceTimeField::from_trajectory(const Trajectory& trajectory, double t_begin, double t_end) {
  const double slack = 1e-9 * trajectory.sample_interval();
  std::vector<SpectralField> picked;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double t = trajectory.times()[i];
    if (t >= t_begin - slack && t <= t_end + slack) picked.push_back(trajectory.snapshots()[i]);
  }
  return SpaceTimeField(trajectory.sample_interval(), std::move(picked));
}

SpaceTimeField SpaceTimeField::from_trajectory(const Trajectory& trajectory) {
  return from_trajectory(trajectory, 0.0, trajectory.times().back());
}

namespace {

double japanese(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace

double bourgain_norm(const SpaceTimeField& u, const BourgainParams& params) {
  const Grid& grid = u.grid();
  const double h = u.time_step();
  const TimeWindow& window = params.window;
  if (window.padding < 1) throw std::invalid_argument("bourgain: padding factor must be >= 1");
  if (window.width < 0.0 || window.width > u.span() * (1.0 + 1e-12)) {
    throw std::invalid_argument(fmt::format("bourgain: window width {} exceeds segment span {}", window.width, u.span()));
  }
  if (!(params.sigma >= 0.0)) throw std::invalid_argument("bourgain: sigma must be >= 0");

  std::size_t count = u.size();
  if (window.width > 0.0) count = static_cast<std::size_t>(std::floor(window.width / h + 1e-9)) + 1;
  if (count < kMinTimeSamples) {
    throw std::invalid_argument(fmt::format("bourgain: window keeps {} samples, need {}", count, kMinTimeSamples));
  }
  const std::size_t padded = window.padding * count;
  const double tau_max = kPi / h;

  // Largest log-weight must stay representable.
  double log_weight = params.sigma * grid.k_max();
  if (params.s > 0.0) log_weight += params.s * std::log(japanese(grid.k_max()));
  if (params.b > 0.0) log_weight += params.b * std::log(japanese(tau_max));
  if (log_weight > kMaxExponent) {
    throw OverflowGuardError(fmt::format("bourgain: weight exponent {} overflows (b = {}, sigma = {})", log_weight,
                                         params.b, params.sigma));
  }

  std::vector<double> taper(count, 1.0);
  if (window.taper == Taper::raised_cosine) {
    for (std::size_t n = 0; n < count; ++n) {
      taper[n] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(count - 1)));
    }
  }

  // Modulation weights <tau'>^{2b} for tau' = tau - k^3 on the padded grid.
  std::vector<double> modulation(padded);
  for (std::size_t j = 0; j < padded; ++j) {
    const auto shifted = j < padded / 2 ? static_cast<double>(j)
                                        : static_cast<double>(j) - static_cast<double>(padded);
    const double tau = 2.0 * kPi * shifted / (static_cast<double>(padded) * h);
    modulation[j] = std::pow(japanese(tau), 2.0 * params.b);
  }

  std::vector<Complex> series(padded);
  std::vector<Complex> spectrum(padded);
  double sum = 0.0;
  for (std::size_t m = 0; m < grid.half_size(); ++m) {
    const double k = grid.wavenumber(static_cast<std::ptrdiff_t>(m));
    const double k3 = k * k * k;
    std::fill(series.begin(), series.end(), Complex{});
    bool any = false;
    for (std::size_t n = 0; n < count; ++n) {
      const Complex c = u.samples()[n].modes()[m];
      if (c != Complex{}) any = true;
      series[n] = taper[n] * c * std::polar(1.0, -k3 * h * static_cast<double>(n));
    }
    if (!any) continue;
    fft::complex_forward(series, spectrum);

    double mode_sum = 0.0;
    for (std::size_t j = 0; j < padded; ++j) mode_sum += modulation[j] * std::norm(spectrum[j]);
    double spatial = std::exp(2.0 * params.sigma * k);
    if (params.s != 0.0) spatial *= std::pow(japanese(k), 2.0 * params.s);
    sum += mode_multiplicity(grid, m) * spatial * mode_sum;
  }
  return std::sqrt(grid.length() * h / static_cast<double>(padded) * sum);
}

void MultilinearProbe::validate() const {
  if (!(b > 0.5)) throw std::invalid_argument(fmt::format("multilinear probe: need b > 1/2, got {}", b));
  if (!(s > -1.0 / 6.0)) throw std::invalid_argument(fmt::format("multilinear probe: need s > -1/6, got {}", s));
  const double upper = s >= 0.0 ? -1.0 / 3.0 : s - 1.0 / 3.0;
  if (!(b_prime > -0.5 && b_prime < upper)) {
    throw std::invalid_argument(
        fmt::format("multilinear probe: need -1/2 < b' < {} for s = {}, got b' = {}", upper, s, b_prime));
  }
  if (!(sigma >= 0.0)) throw std::invalid_argument("multilinear probe: sigma must be >= 0");
}

SpaceTimeField differentiated_product(const std::array<const SpaceTimeField*, 4>& factors) {
  const SpaceTimeField& first = *factors[0];
  for (const SpaceTimeField* f : factors) {
    require_same_grid(first.grid(), f->grid());
    if (f->size() != first.size() || f->time_step() != first.time_step()) {
      throw std::invalid_argument("multilinear probe: factors must share time sampling");
    }
  }
  std::vector<SpectralField> product;
  product.reserve(first.size());
  for (std::size_t n = 0; n < first.size(); ++n) {
    product.push_back(derivative(dealiased_product(factors[0]->samples()[n], factors[1]->samples()[n],
                                                   factors[2]->samples()[n], factors[3]->samples()[n]),
                                 1));
  }
  return SpaceTimeField(first.time_step(), std::move(product));
}

double probe_multilinear(const std::array<const SpaceTimeField*, 4>& factors, const MultilinearProbe& probe) {
  probe.validate();
  const SpaceTimeField product = differentiated_product(factors);
  const double lhs = bourgain_norm(product, {probe.sigma, probe.s, probe.b_prime, probe.window});
  if (lhs == 0.0) return 0.0;
  double rhs = 1.0;
  for (const SpaceTimeField* f : factors) rhs *= bourgain_norm(*f, {probe.sigma, probe.s, probe.b, probe.window});
  if (rhs == 0.0) throw std::invalid_argument("multilinear probe: degenerate factor with zero norm");
  return lhs / rhs;
}

}  // namespace gkdv
