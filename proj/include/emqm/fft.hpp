#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace emqm {

/// In-place radix-2 complex FFT; n must be a power of two.
void fft_pow2(std::complex<double>* data, std::size_t n, bool inverse);

/// In-place 3D FFT on an nx*ny*nz array (x fastest); each extent must be a
/// power of two. The inverse includes the 1/N normalization.
void fft3(std::vector<std::complex<double>>& data, std::size_t nx, std::size_t ny,
          std::size_t nz, bool inverse);

std::size_t next_pow2(std::size_t n);

}  // namespace emqm
