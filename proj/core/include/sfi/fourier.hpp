#pragma once

#include <complex>

namespace sfi {

/// Unnormalized in-place DFTs over a dim-dimensional n^dim array
/// (row-major, complex interleaved). Plans are cached per (dim, n) and
/// created with FFTW_ESTIMATE so results are reproducible run to run.
/// Plan creation is serialized; execution on distinct buffers is
/// thread-safe.
void dft_forward(int dim, int n, std::complex<double>* data);
void dft_backward(int dim, int n, std::complex<double>* data);

}  // namespace sfi
