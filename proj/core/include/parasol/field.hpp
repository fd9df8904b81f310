#ifndef PARASOL_FIELD_HPP
#define PARASOL_FIELD_HPP

#include <complex>
#include <span>
#include <vector>

#include "parasol/grid.hpp"

namespace parasol {

using cplx = std::complex<double>;

/// N-component array of Fourier coefficients over a Grid.
///
/// coeff(j, xi) is the Fourier coefficient of component j, so that
/// u_j(x) = sum_xi coeff(j, xi) e^{i xi.x}.  Real-valued fields satisfy
/// coeff(-xi) = conj(coeff(xi)); mean-free fields have coeff(0) = 0.
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(GridPtr grid, int components);

    const Grid& grid() const { return *grid_; }
    GridPtr grid_ptr() const { return grid_; }
    int components() const { return ncomp_; }

    std::span<cplx> component(int j);
    std::span<const cplx> component(int j) const;

    cplx& at(int j, std::size_t flat) { return data_[j * grid_->size() + flat]; }
    const cplx& at(int j, std::size_t flat) const { return data_[j * grid_->size() + flat]; }

    std::vector<cplx>& raw() { return data_; }
    const std::vector<cplx>& raw() const { return data_; }

    /// Zero every coefficient with |xi| above the truncation radius.
    void truncate();
    /// Zero the xi = 0 coefficient of every component.
    void remove_mean();
    /// Project onto the Hermitian-symmetric part, coeff(-xi) <- conj pair mean.
    void hermitianize();

    bool is_hermitian(double tol = 1e-12) const;
    bool is_mean_free(double tol = 0.0) const;
    /// Max |coeff| outside the truncation ball (should be exactly 0).
    double truncation_violation() const;

    /// Largest coefficient modulus over all components and modes.
    double max_abs() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(cplx c);

    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }

private:
    GridPtr grid_;
    int ncomp_ = 0;
    std::vector<cplx> data_;
};

} // namespace parasol

#endif
