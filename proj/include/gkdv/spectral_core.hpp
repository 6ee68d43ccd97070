#pragma once

// Periodic grid, Fourier-series fields and the spectral operators shared by
// every other part of the library.
//
// Conventions:
//   x_j = j L / N,                j = 0 .. N-1
//   k_m = 2 pi m / L,             m = -N/2+1 .. N/2
//   c_m = (1/N) sum_j u(x_j) e^{-i k_m x_j}
//   u(x) = sum_m c_m e^{i k_m x}
// so that  int |u|^2 dx = L sum_m |c_m|^2.
//
// Fields are real, so only the non-negative half of the spectrum
// (m = 0 .. N/2) is stored; c_{-m} = conj(c_m) holds by construction.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gkdv {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Largest argument accepted for e^{sigma |k|} style weights.
inline constexpr double kMaxExponent = 700.0;

/// Raised when an exponential weight would leave double-precision range.
class OverflowGuardError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class Grid {
 public:
  /// Throws std::invalid_argument unless modes is even and >= 8 and length > 0.
  Grid(std::size_t modes, double length);

  std::size_t size() const noexcept { return modes_; }
  std::size_t half_size() const noexcept { return modes_ / 2 + 1; }
  std::size_t nyquist_index() const noexcept { return modes_ / 2; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / static_cast<double>(modes_); }
  double point(std::size_t j) const noexcept { return static_cast<double>(j) * spacing(); }
  double resolution() const noexcept { return 2.0 * kPi / length_; }
  double wavenumber(std::ptrdiff_t m) const noexcept {
    return resolution() * static_cast<double>(m);
  }
  double k_max() const noexcept {
    return wavenumber(static_cast<std::ptrdiff_t>(nyquist_index()));
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t modes_;
  double length_;
};

Grid make_grid(std::size_t modes, double length);

class RealField {
 public:
  explicit RealField(Grid grid);
  /// Throws std::invalid_argument on size mismatch or non-finite samples.
  RealField(Grid grid, std::vector<double> samples);

  static RealField from_function(Grid grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t j) const { return samples_[j]; }

 private:
  Grid grid_;
  std::vector<double> samples_;
};

class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  /// `modes` holds c_0 .. c_{N/2}. Imaginary parts of the two self-conjugate
  /// modes (m = 0 and the Nyquist mode) are dropped.
  SpectralField(Grid grid, std::vector<Complex> modes);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> modes() const noexcept { return modes_; }
  std::span<Complex> modes() noexcept { return modes_; }

  /// Coefficient for any m in (-N/2, N/2].
  Complex coeff(std::ptrdiff_t m) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double factor);

  bool all_finite() const noexcept;

 private:
  Grid grid_;
  std::vector<Complex> modes_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double factor, SpectralField a);

SpectralField forward(const RealField& u);
RealField inverse(const SpectralField& u);

/// Multiplies c_k by e^{sigma |k|}. Throws OverflowGuardError if
/// sigma * k_max exceeds kMaxExponent.
SpectralField exp_multiplier(const SpectralField& u, double sigma);

/// Applies (d/dx)^order, i.e. multiplies c_k by (ik)^order.
SpectralField derivative(const SpectralField& u, int order);

/// Alias-free coefficients of u^4 on the resolved modes |m| < N/2.
SpectralField nonlinear_power4(const SpectralField& u);

/// Alias-free coefficients of u1 u2 u3 u4 on the resolved modes |m| < N/2.
SpectralField dealiased_product(const SpectralField& u1, const SpectralField& u2,
                                const SpectralField& u3, const SpectralField& u4);

/// u^4 evaluated on the N-point grid itself (aliased); used when dealiasing is off.
SpectralField aliased_power4(const SpectralField& u);

/// Samples of u on a uniform grid of `points` >= N points (trigonometric interpolation).
std::vector<double> sample_on_padded_grid(const SpectralField& u, std::size_t points);

/// Reflection x -> -x.
SpectralField reflect(const SpectralField& u);

/// Translation u(x) -> u(x - shift).
SpectralField translate(const SpectralField& u, double shift);

/// int u dx over one period.
double integral(const SpectralField& u);
/// int u v dx over one period.
double inner_product(const SpectralField& u, const SpectralField& v);
double l2_norm(const SpectralField& u);
/// max_j |u(x_j)|
double sup_norm(const SpectralField& u);

/// Multiplicity of stored mode m in a full-spectrum sum (1 for m = 0 and the
/// Nyquist mode, 2 otherwise).
inline double mode_multiplicity(const Grid& grid, std::size_t m) noexcept {
  return (m == 0 || m == grid.nyquist_index()) ? 1.0 : 2.0;
}

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace gkdv
