#ifndef PARASOL_GRID_HPP
#define PARASOL_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace parasol {

/// Discrete Fourier lattice of a periodic torus [0,L)^d.
///
/// Wavenumbers are xi = 2*pi*m/L for integer vectors m with
/// |m_i| <= points_per_axis/2 (FFT index ordering per axis:
/// 0, 1, ..., P/2, -(P/2-1), ..., -1).  Modes with |xi| above the
/// truncation radius are outside the Galerkin ball and must stay zero.
class Grid {
public:
    Grid(int d, int points_per_axis, double period, double truncation_radius);

    int dim() const { return d_; }
    int points_per_axis() const { return points_; }
    double period() const { return period_; }
    double truncation_radius() const { return cutoff_; }
    /// Largest representable |xi| per axis, pi * P / L.
    double nyquist() const;
    /// Reciprocal-lattice cell volume (2*pi/L)^d, the dxi of lattice sums.
    double cell_volume() const;

    /// Total number of lattice points per component.
    std::size_t size() const { return total_; }

    /// Signed integer index m along one axis for FFT slot j.
    int signed_index(int slot) const { return slot <= points_ / 2 ? slot : slot - points_; }
    /// FFT slot for signed index m (m in [-P/2, P/2]).
    int slot_of(int m) const { return m >= 0 ? m : m + points_; }

    /// Integer lattice vector m of the flat index.
    std::array<int, 3> lattice_vector(std::size_t flat) const;
    /// Wavenumber vector 2*pi*m/L (unused axes are zero).
    std::array<double, 3> wavenumber(std::size_t flat) const;
    /// Flat index of an integer lattice vector (unused axes ignored).
    std::size_t flat_index(const std::array<int, 3>& m) const;

    /// |xi| of the flat index (precomputed).
    double xi_norm(std::size_t flat) const { return xi_norm_[flat]; }
    /// True when |xi| <= truncation radius; such modes may carry data.
    bool retained(std::size_t flat) const { return retained_[flat] != 0; }
    /// Flat index of the conjugate mode -m.
    std::size_t conjugate_index(std::size_t flat) const;

    /// Largest |m_i| over retained modes; bounds the dealiasing pad.
    int max_axis_index() const { return max_axis_index_; }

    bool compatible(const Grid& other) const;

private:
    int d_;
    int points_;
    double period_;
    double cutoff_;
    std::size_t total_;
    int max_axis_index_;
    std::vector<double> xi_norm_;
    std::vector<std::uint8_t> retained_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validating factory: points_per_axis must be a power of two and the
/// truncation radius must not exceed the Nyquist wavenumber pi*P/L.
GridPtr make_grid(int d, int points_per_axis, double period, double truncation_radius);

} // namespace parasol

#endif
