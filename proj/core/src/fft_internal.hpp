#ifndef PARASOL_FFT_INTERNAL_HPP
#define PARASOL_FFT_INTERNAL_HPP

#include <complex>
#include <span>
#include <vector>

#include "parasol/grid.hpp"

namespace parasol::fft {

using cplx = std::complex<double>;

/// Unnormalized c2c DFT over a row-major array of the given dims.
/// sign -1 = analysis (e^{-i}), +1 = synthesis (e^{+i}).  in and out
/// must be distinct.  Plans are cached per (dims, sign); execution is
/// thread-safe and deterministic (FFTW_ESTIMATE plans only).
void c2c(const std::vector<int>& dims, int sign, const cplx* in, cplx* out);

/// Smallest 5-smooth integer >= n (cheap FFT length).
int fft_friendly(int n);

/// Padded per-axis extent that makes a k-fold product alias-free on the
/// retained modes: (k+1)*h + 1 rounded up to an FFT-friendly length,
/// where h is the largest retained axis index.
int padded_extent(const Grid& g, int k);

/// Scatter grid coefficients into the zero-padded cube (extent M per
/// axis); slots are signed lattice indices mod M.
void embed_padded(const Grid& g, std::span<const cplx> coeffs, int M, std::vector<cplx>& padded);

/// Gather modes of g from the padded cube, scaling by 1/M^d and zeroing
/// everything outside the truncation ball.
void extract_padded(const Grid& g, int M, const std::vector<cplx>& padded, std::span<cplx> coeffs);

} // namespace parasol::fft

#endif
