#pragma once

// Reference computations for the tests. None of these touch FFTW or the
// library's spectral operators: they work from explicit sums and quadrature.

#include <complex>
#include <functional>
#include <vector>

#include "gkdv/spectral_core.hpp"

namespace oracle {

using gkdv::Complex;

/// c_m = (1/N) sum_j u_j e^{-2 pi i m j / N} for m = 0 .. N/2.
std::vector<Complex> direct_dft(const std::vector<double>& samples);

/// Inverse of the above: u(x) = sum over the full symmetric spectrum, with the
/// Nyquist coefficient shared equally between +-N/2.
double evaluate(const gkdv::SpectralField& u, double x);

/// Full-spectrum coefficients indexed by m + N/2 for m = -N/2 .. N/2, with
/// the Nyquist mode split across both ends.
std::vector<Complex> full_spectrum(const gkdv::SpectralField& u);

/// Four-fold convolution of the full spectra, truncated to |m| < N/2.
/// Cost O(N^4); intended for N <= 16.
std::vector<Complex> brute_product4(const gkdv::SpectralField& a, const gkdv::SpectralField& b,
                                    const gkdv::SpectralField& c, const gkdv::SpectralField& d);

/// u^4 by pointwise evaluation on a 4N grid and a direct DFT; |m| < N/2.
std::vector<Complex> quadrature_power4(const gkdv::SpectralField& u);

/// d/dx[(e^{sigma|D|}u)^4 - e^{sigma|D|}(u^4)] built from quadrature_power4.
std::vector<Complex> quadrature_commutator(const gkdv::SpectralField& u, double sigma);

/// Soliton profile phi(x) for speed c found by inverting
///   |x| = int_phi^{phi_max} dpsi / sqrt(c psi^2 - 2 psi^5 / 5)
/// with adaptive quadrature and bisection.
double soliton_by_quadrature(double x, double c);

/// Max over a grid of |-c phi + phi'' + phi^4| with phi'' by a six-point
/// centred difference of `phi`, relative to max |phi|.
double travelling_wave_residual(const std::function<double(double)>& phi, double c, double x_extent,
                                double h);

}  // namespace oracle
