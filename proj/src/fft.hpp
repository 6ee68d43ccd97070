#pragma once

// Thin FFTW wrapper. Plans are created once per (kind, size) and reused
// through FFTW's new-array execute interface, which is safe to call from
// several threads at once.

#include <complex>
#include <span>

namespace gkdv::fft {

/// out[m] = sum_j in[j] e^{-2 pi i j m / n}, m = 0 .. n/2. No normalization.
void real_to_complex(std::span<const double> in, std::span<std::complex<double>> out);

/// out[j] = sum_m c_m e^{2 pi i j m / n} for the Hermitian extension of the
/// half spectrum `in` (n/2+1 values). `in` is left untouched.
void complex_to_real(std::span<const std::complex<double>> in, std::span<double> out);

/// out[j] = sum_n in[n] e^{-2 pi i j n / size}. No normalization.
void complex_forward(std::span<const std::complex<double>> in,
                     std::span<std::complex<double>> out);

}  // namespace gkdv::fft
