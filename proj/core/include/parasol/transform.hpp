#ifndef PARASOL_TRANSFORM_HPP
#define PARASOL_TRANSFORM_HPP

#include <array>
#include <functional>
#include <vector>

#include "parasol/field.hpp"

namespace parasol {

/// Scalar Fourier-multiplier symbol, evaluated at a wavenumber vector.
/// Receives the xi vector (unused axes zero) and |xi|.
using Symbol = std::function<cplx(const std::array<double, 3>& xi, double xi_norm)>;

/// Real-space samples on the collocation grid, one contiguous block of
/// P^d doubles per component, axis 0 slowest (row-major).
struct PhysicalField {
    GridPtr grid;
    int components = 0;
    std::vector<double> values;
};

/// DFT with the coefficient normalization: coeff(xi) = P^-d sum_x u(x) e^{-i xi.x}.
/// The output is truncated to the Galerkin ball of the grid.
SpectralField forward_transform(const PhysicalField& u, GridPtr grid);

/// Inverse of forward_transform; imaginary residue of the synthesis is
/// discarded (fields are real-valued on the collocation grid).
PhysicalField inverse_transform(const SpectralField& f);

/// coeff_out(xi) = symbol(xi) * coeff_in(xi) on every retained mode.
/// The value at xi = 0 must be supplied explicitly (homogeneous symbols
/// have no canonical value there).  Throws on a non-finite symbol value
/// at a retained mode.
SpectralField apply_multiplier(const SpectralField& f, const Symbol& symbol, cplx value_at_zero);

/// Exact Fourier coefficients of the pointwise product of k fields,
/// truncated to the Galerkin ball.  Implemented by zero-padding every
/// axis so that no aliasing reaches the retained modes; the padded
/// extent is the smallest FFT-friendly integer >= (k+1)*h + 1 where h
/// is the largest retained axis index.
SpectralField dealiased_product(const std::vector<const SpectralField*>& factors);

/// Leray projection coeff_j <- (delta_jm - xi_j xi_m / |xi|^2) coeff_m;
/// requires components == dim.  The zero mode is annihilated.
void leray_project(SpectralField& f);

/// Max modulus over modes of i xi . coeff (zero for divergence-free fields).
double divergence_linf(const SpectralField& f);

namespace detail {
/// Physical samples of each field on the common zero-padded grid,
/// reusable across products of the same factors (nonlinearity tables).
struct PaddedWorkspace;
} // namespace detail

} // namespace parasol

#endif
