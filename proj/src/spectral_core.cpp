#include "gkdv/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "fft.hpp"

namespace gkdv {

Grid::Grid(std::size_t modes, double length) : modes_(modes), length_(length) {
  if (modes < 8 || modes % 2 != 0) {
    throw std::invalid_argument(fmt::format("grid: mode count must be even and >= 8, got {}", modes));
  }
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw std::invalid_argument(fmt::format("grid: length must be positive and finite, got {}", length));
  }
}

Grid make_grid(std::size_t modes, double length) { return Grid(modes, length); }

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) {
    throw std::invalid_argument(fmt::format("grid mismatch: (N={}, L={}) vs (N={}, L={})", a.size(),
                                            a.length(), b.size(), b.length()));
  }
}

// ---------------------------------------------------------------- RealField

RealField::RealField(Grid grid) : grid_(grid), samples_(grid.size(), 0.0) {}

RealField::RealField(Grid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.size() != grid_.size()) {
    throw std::invalid_argument(
        fmt::format("real field: expected {} samples, got {}", grid_.size(), samples_.size()));
  }
  for (std::size_t j = 0; j < samples_.size(); ++j) {
    if (!std::isfinite(samples_[j])) {
      throw std::invalid_argument(fmt::format("real field: sample {} is not finite", j));
    }
  }
}

RealField RealField::from_function(Grid grid, const std::function<double(double)>& f) {
  std::vector<double> samples(grid.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f(grid.point(j));
  return RealField(grid, std::move(samples));
}

// ------------------------------------------------------------ SpectralField

SpectralField::SpectralField(Grid grid) : grid_(grid), modes_(grid.half_size()) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> modes)
    : grid_(grid), modes_(std::move(modes)) {
  if (modes_.size() != grid_.half_size()) {
    throw std::invalid_argument(
        fmt::format("spectral field: expected {} modes, got {}", grid_.half_size(), modes_.size()));
  }
  modes_.front().imag(0.0);
  modes_.back().imag(0.0);
}

Complex SpectralField::coeff(std::ptrdiff_t m) const {
  const auto half = static_cast<std::ptrdiff_t>(grid_.nyquist_index());
  if (m <= -half || m > half) {
    throw std::out_of_range(fmt::format("mode {} outside (-{}, {}]", m, half, half));
  }
  return m >= 0 ? modes_[static_cast<std::size_t>(m)]
                : std::conj(modes_[static_cast<std::size_t>(-m)]);
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t m = 0; m < modes_.size(); ++m) modes_[m] += other.modes_[m];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t m = 0; m < modes_.size(); ++m) modes_[m] -= other.modes_[m];
  return *this;
}

SpectralField& SpectralField::operator*=(double factor) {
  for (auto& c : modes_) c *= factor;
  return *this;
}

bool SpectralField::all_finite() const noexcept {
  return std::all_of(modes_.begin(), modes_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double factor, SpectralField a) { return a *= factor; }

// --------------------------------------------------------------- transforms

SpectralField forward(const RealField& u) {
  const Grid& grid = u.grid();
  std::vector<Complex> modes(grid.half_size());
  fft::real_to_complex(u.samples(), modes);
  const double scale = 1.0 / static_cast<double>(grid.size());
  for (auto& c : modes) c *= scale;
  return SpectralField(grid, std::move(modes));
}

RealField inverse(const SpectralField& u) {
  std::vector<double> samples(u.grid().size());
  fft::complex_to_real(u.modes(), samples);
  return RealField(u.grid(), std::move(samples));
}

std::vector<double> sample_on_padded_grid(const SpectralField& u, std::size_t points) {
  const Grid& grid = u.grid();
  if (points < grid.size() || points % 2 != 0) {
    throw std::invalid_argument(fmt::format("padded grid: need an even size >= {}, got {}", grid.size(), points));
  }
  std::vector<Complex> padded(points / 2 + 1, Complex{});
  const auto modes = u.modes();
  const std::size_t nyq = grid.nyquist_index();
  std::copy(modes.begin(), modes.begin() + static_cast<std::ptrdiff_t>(nyq), padded.begin());
  // The unpaired Nyquist mode stands for c cos(k x): split it evenly over +-k
  // unless the padded grid has the same size.
  padded[nyq] = points == grid.size() ? modes[nyq] : 0.5 * modes[nyq];
  std::vector<double> samples(points);
  fft::complex_to_real(padded, samples);
  return samples;
}

namespace {

// Padding for quartic products: modes of a product of four fields reach 2N,
// and 3N keeps their aliases outside |m| < N/2.
constexpr std::size_t kPaddingFactor = 3;

SpectralField truncate_from_samples(const Grid& grid, const std::vector<double>& samples) {
  std::vector<Complex> fine(samples.size() / 2 + 1);
  fft::real_to_complex(samples, fine);
  const double scale = 1.0 / static_cast<double>(samples.size());
  std::vector<Complex> modes(grid.half_size());
  for (std::size_t m = 0; m < grid.nyquist_index(); ++m) modes[m] = fine[m] * scale;
  modes.back() = 0.0;
  return SpectralField(grid, std::move(modes));
}

void check_exponent(const Grid& grid, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument(fmt::format("sigma must be non-negative and finite, got {}", sigma));
  }
  if (sigma * grid.k_max() > kMaxExponent) {
    throw OverflowGuardError(fmt::format(
        "sigma = {} overflows e^(sigma |k|) on this grid (k_max = {}); largest admissible sigma is {}",
        sigma, grid.k_max(), kMaxExponent / grid.k_max()));
  }
}

}  // namespace

SpectralField exp_multiplier(const SpectralField& u, double sigma) {
  check_exponent(u.grid(), sigma);
  SpectralField out = u;
  auto modes = out.modes();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    modes[m] *= std::exp(sigma * u.grid().wavenumber(static_cast<std::ptrdiff_t>(m)));
  }
  return out;
}

SpectralField derivative(const SpectralField& u, int order) {
  if (order < 1) throw std::invalid_argument(fmt::format("derivative order must be >= 1, got {}", order));
  SpectralField out = u;
  auto modes = out.modes();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double k = u.grid().wavenumber(static_cast<std::ptrdiff_t>(m));
    modes[m] *= std::pow(Complex(0.0, k), order);
  }
  if (order % 2 != 0) modes.back() = 0.0;
  return out;
}

SpectralField nonlinear_power4(const SpectralField& u) {
  const Grid& grid = u.grid();
  auto samples = sample_on_padded_grid(u, kPaddingFactor * grid.size());
  for (auto& v : samples) {
    const double sq = v * v;
    v = sq * sq;
  }
  return truncate_from_samples(grid, samples);
}

SpectralField dealiased_product(const SpectralField& u1, const SpectralField& u2,
                                const SpectralField& u3, const SpectralField& u4) {
  const Grid& grid = u1.grid();
  require_same_grid(grid, u2.grid());
  require_same_grid(grid, u3.grid());
  require_same_grid(grid, u4.grid());
  const std::size_t points = kPaddingFactor * grid.size();
  auto product = sample_on_padded_grid(u1, points);
  for (const SpectralField* f : {&u2, &u3, &u4}) {
    const auto s = sample_on_padded_grid(*f, points);
    for (std::size_t j = 0; j < points; ++j) product[j] *= s[j];
  }
  return truncate_from_samples(grid, product);
}

SpectralField aliased_power4(const SpectralField& u) {
  auto samples = sample_on_padded_grid(u, u.grid().size());
  for (auto& v : samples) {
    const double sq = v * v;
    v = sq * sq;
  }
  return truncate_from_samples(u.grid(), samples);
}

SpectralField reflect(const SpectralField& u) {
  SpectralField out = u;
  for (auto& c : out.modes()) c = std::conj(c);
  return out;
}

SpectralField translate(const SpectralField& u, double shift) {
  SpectralField out = u;
  auto modes = out.modes();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    modes[m] *= std::polar(1.0, -u.grid().wavenumber(static_cast<std::ptrdiff_t>(m)) * shift);
  }
  modes.back() = 0.0;
  return out;
}

double integral(const SpectralField& u) { return u.grid().length() * u.modes().front().real(); }

double inner_product(const SpectralField& u, const SpectralField& v) {
  require_same_grid(u.grid(), v.grid());
  const auto a = u.modes();
  const auto b = v.modes();
  double sum = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) {
    sum += mode_multiplicity(u.grid(), m) * (std::conj(a[m]) * b[m]).real();
  }
  return u.grid().length() * sum;
}

double l2_norm(const SpectralField& u) { return std::sqrt(std::max(0.0, inner_product(u, u))); }

double sup_norm(const SpectralField& u) {
  const auto samples = sample_on_padded_grid(u, u.grid().size());
  double peak = 0.0;
  for (double v : samples) peak = std::max(peak, std::abs(v));
  return peak;
}

}  // namespace gkdv
