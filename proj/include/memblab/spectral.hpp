// spectral.hpp
// Discrete Fourier transforms on the periodic grid, spectral derivatives and
// Parseval sums. Convention: u(x) = sum_k u_hat_k e^{2 pi i k x} with
// u_hat_k = (1/N) sum_j u(x_j) e^{-2 pi i k x_j}, frequencies k in
// (-N/2, N/2]. Physical derivatives carry the 2*pi factor.
#pragma once

#include <complex>
#include <vector>

#include "memblab/grid.hpp"

namespace memblab {

using cplx = std::complex<double>;

struct SpectralField {
    int n = 0;                 // underlying grid resolution
    std::vector<cplx> coeffs;  // DFT layout: index j holds frequency (j <= n/2 ? j : j-n)

    int freq_of_index(int j) const { return j <= n / 2 ? j : j - n; }
    int index_of_freq(int k) const { return k >= 0 ? k : k + n; }
    int max_freq() const { return n / 2; }
    cplx coeff(int k) const { return coeffs[static_cast<size_t>(index_of_freq(k))]; }
    cplx& at_freq(int k) { return coeffs[static_cast<size_t>(index_of_freq(k))]; }
};

SpectralField forward_transform(const SampledField& u);
SampledField inverse_transform(const SpectralField& s);

// Largest imaginary residual of the inverse transform; diagnostic for tests.
double inverse_transform_imag_residual(const SpectralField& s);

// Multiplies each coefficient by (2 pi i k)^order; Nyquist mode of odd-order
// derivatives is zeroed. order must be 1 or 2.
SpectralField derivative(const SpectralField& s, int order);

double parseval_sum(const SpectralField& s);  // sum_k |u_hat_k|^2

// O(N^2) reference transform, kept as an independent oracle and as the
// fallback for even N that is not a power of two.
SpectralField forward_transform_direct(const SampledField& u);

bool is_power_of_two(int n);

// In-place complex FFT core for power-of-two sizes (sign = -1 forward).
void fft_pow2(std::vector<cplx>& a, int sign);

}  // namespace memblab
