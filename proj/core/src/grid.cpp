#include "parasol/grid.hpp"

#include <cmath>
#include <string>

#include "parasol/errors.hpp"

namespace parasol {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid::Grid(int d, int points_per_axis, double period, double truncation_radius)
    : d_(d), points_(points_per_axis), period_(period), cutoff_(truncation_radius) {
    if (d_ < 1 || d_ > 3)
        throw invalid_input("grid dimension must be 1, 2 or 3, got " + std::to_string(d_));
    if (!is_power_of_two(points_))
        throw invalid_input("points_per_axis must be a power of two, got " +
                            std::to_string(points_));
    if (!(period_ > 0.0))
        throw invalid_input("torus period must be positive");
    if (!(cutoff_ > 0.0))
        throw invalid_input("truncation radius must be positive");
    const double nyq = nyquist();
    if (cutoff_ > nyq * (1.0 + 1e-12))
        throw invalid_input("truncation radius " + std::to_string(cutoff_) +
                            " exceeds Nyquist wavenumber " + std::to_string(nyq));

    total_ = 1;
    for (int i = 0; i < d_; ++i) total_ *= static_cast<std::size_t>(points_);

    const double dxi = 2.0 * M_PI / period_;
    // |xi|^2 <= cutoff^2 with a one-ulp cushion so lattice shells that sit
    // exactly on the radius are kept.
    const double cut_sq = cutoff_ * cutoff_ * (1.0 + 8e-16);
    xi_norm_.resize(total_);
    retained_.resize(total_);
    max_axis_index_ = 0;
    for (std::size_t flat = 0; flat < total_; ++flat) {
        const auto m = lattice_vector(flat);
        double sq = 0.0;
        for (int i = 0; i < d_; ++i) sq += double(m[i]) * double(m[i]);
        sq *= dxi * dxi;
        xi_norm_[flat] = std::sqrt(sq);
        retained_[flat] = sq <= cut_sq ? 1 : 0;
        if (retained_[flat])
            for (int i = 0; i < d_; ++i)
                max_axis_index_ = std::max(max_axis_index_, std::abs(m[i]));
    }
}

double Grid::nyquist() const { return M_PI * points_ / period_; }

double Grid::cell_volume() const {
    double v = 1.0;
    for (int i = 0; i < d_; ++i) v *= 2.0 * M_PI / period_;
    return v;
}

std::array<int, 3> Grid::lattice_vector(std::size_t flat) const {
    std::array<int, 3> m{0, 0, 0};
    // axis 0 slowest, axis d-1 fastest
    for (int i = d_ - 1; i >= 0; --i) {
        const int slot = static_cast<int>(flat % points_);
        flat /= points_;
        m[i] = signed_index(slot);
    }
    return m;
}

std::array<double, 3> Grid::wavenumber(std::size_t flat) const {
    const auto m = lattice_vector(flat);
    const double dxi = 2.0 * M_PI / period_;
    return {m[0] * dxi, m[1] * dxi, m[2] * dxi};
}

std::size_t Grid::flat_index(const std::array<int, 3>& m) const {
    std::size_t flat = 0;
    for (int i = 0; i < d_; ++i)
        flat = flat * points_ + static_cast<std::size_t>(slot_of(m[i]));
    return flat;
}

std::size_t Grid::conjugate_index(std::size_t flat) const {
    const auto m = lattice_vector(flat);
    // slot_of maps -P/2 to the shared +P/2 slot, so negation is safe at Nyquist
    return flat_index({-m[0], -m[1], -m[2]});
}

bool Grid::compatible(const Grid& other) const {
    return d_ == other.d_ && points_ == other.points_ && period_ == other.period_ &&
           cutoff_ == other.cutoff_;
}

GridPtr make_grid(int d, int points_per_axis, double period, double truncation_radius) {
    return std::make_shared<const Grid>(d, points_per_axis, period, truncation_radius);
}

} // namespace parasol
