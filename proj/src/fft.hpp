#pragma once

// Thin FFTW wrapper. Plans are cached per size and executed through the new-array interface,
// which FFTW allows from several threads at once.

#include <complex>
#include <cstddef>
#include <span>

namespace kljn::detail {

/// out[t] = sum_k in[k] exp(+2 pi i k t / n), Hermitian half-spectrum of n/2+1 bins. Destroys `in`.
void inverse_real_fft(std::span<std::complex<double>> in, std::span<double> out);

/// Unnormalized forward transform, n/2+1 output bins.
void forward_real_fft(std::span<double> in, std::span<std::complex<double>> out);

} // namespace kljn::detail
